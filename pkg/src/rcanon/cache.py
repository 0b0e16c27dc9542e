"""On-disk store of normal forms of connected components.

File layout (UTF-8, LF)::

    # rcanon-cache format=1 tool=0.1.0
    R(^1 ^2, ^3 ^4) * R(_1 _3, _2 _4) := 1/2 * R(^1 ^2, ^3 ^4) * R(_1 _2, _3 _4)

A key is the rendered monic pre-normal component, prefixed by ``[a,b,...]``
when a non-default free-index order is active.  A file written by another
format or tool version is ignored as a whole.
"""
from __future__ import annotations

import logging
import os
import tempfile

from . import __version__
from .expr import DEFAULT_ORDER, IndexOrder, RMonomial, RPolynomial
from .text import ParseError, ValidationError, parse_expression, render_expression

FORMAT_VERSION = 1
HEADER = f"# rcanon-cache format={FORMAT_VERSION} tool={__version__}"
SEPARATOR = " := "

log = logging.getLogger(__name__)


class NormalFormCache:
    def __init__(self, path: str | os.PathLike, order: IndexOrder | None = None):
        self.path = os.fspath(path)
        self.order = order or DEFAULT_ORDER
        self._entries: dict[str, str] = {}
        self._load()

    def _load(self) -> None:
        try:
            with open(self.path, encoding="utf-8") as fh:
                lines = fh.read().split("\n")
        except FileNotFoundError:
            return
        except (OSError, UnicodeDecodeError) as exc:
            log.warning("cache %s is unreadable (%s); starting empty", self.path, exc)
            return
        if not lines or lines[0].strip() != HEADER:
            return
        for line in lines[1:]:
            if not line:
                continue
            key, sep, value = line.partition(SEPARATOR)
            if not sep:
                log.warning("cache %s: skipping malformed line", self.path)
                continue
            self._entries[key] = value

    def key(self, m: RMonomial) -> str:
        text = render_expression(RPolynomial((m.monic(),)))
        if self.order.free_order:
            text = "[" + ",".join(self.order.free_order) + "] " + text
        return text

    def __len__(self) -> int:
        return len(self._entries)

    def get(self, m: RMonomial) -> RPolynomial | None:
        text = self._entries.get(self.key(m))
        if text is None:
            return None
        try:
            return parse_expression(text, self.order, allow_integer_dummies=True)
        except (ParseError, ValidationError):
            log.warning("cache %s: unparsable entry ignored", self.path)
            return None

    def put(self, m: RMonomial, value: RPolynomial) -> None:
        k = self.key(m)
        if k in self._entries:
            return
        self._entries[k] = render_expression(value)
        self._write()

    def _write(self) -> None:
        body = HEADER + "\n" + "".join(f"{k}{SEPARATOR}{v}\n" for k, v in self._entries.items())
        folder = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(prefix=".rcanon-cache-", dir=folder)
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(body)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


__all__ = ["NormalFormCache", "HEADER", "FORMAT_VERSION"]
