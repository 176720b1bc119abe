"""Interned node labels.

Instance alphabets are parameterised families (``a_3``, ``#_L``, ...), so
trees store small integer ids and a registry maps names to ids and back.
"""

from __future__ import annotations

import threading


class LabelRegistry:
    def __init__(self):
        self._ids: dict[str, int] = {}
        self._names: list[str] = []
        self._lock = threading.Lock()

    def intern(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            pass
        with self._lock:
            if name not in self._ids:
                self._ids[name] = len(self._names)
                self._names.append(name)
            return self._ids[name]

    def intern_all(self, names) -> list[int]:
        return [self.intern(n) for n in names]

    def name(self, label: int) -> str:
        return self._names[label]

    def get(self, name: str) -> int | None:
        return self._ids.get(name)

    def __contains__(self, name: str) -> bool:
        return name in self._ids

    def __len__(self) -> int:
        return len(self._names)


REGISTRY = LabelRegistry()


def lab(name: str) -> int:
    """Id of ``name`` in the shared registry."""
    return REGISTRY.intern(name)


def labs(names) -> list[int]:
    return [REGISTRY.intern(n) for n in names]


def name_of(label: int) -> str:
    return REGISTRY.name(label)
