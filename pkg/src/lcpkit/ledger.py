"""Bookkeeping of the major arrays an algorithm keeps resident.

Algorithms report each working array they hold (text, byte LCP, queue
buffers, stream chunk buffers, ...) with :meth:`SpaceLedger.hold` and drop it
with :meth:`SpaceLedger.release`. Arrays consumed as sequential streams are
only charged for their chunk buffer. This is an accounting model, not an OS
measurement, so it is exact and reproducible.
"""
from contextlib import contextmanager


class SpaceLedger:
    def __init__(self):
        self.live: dict[str, int] = {}
        self.current = 0
        self.peak = 0
        self.windows: dict[str, int] = {}
        self._open: list[str] = []

    def hold(self, name: str, nbytes: int):
        nbytes = int(nbytes)
        self.current += nbytes - self.live.get(name, 0)
        self.live[name] = nbytes
        self.peak = max(self.peak, self.current)
        for w in self._open:
            self.windows[w] = max(self.windows[w], self.current)

    def release(self, name: str):
        self.current -= self.live.pop(name, 0)

    @contextmanager
    def window(self, label: str):
        """Track the peak of resident bytes while the block runs."""
        self.windows[label] = self.current
        self._open.append(label)
        try:
            yield
        finally:
            self._open.remove(label)

    def report(self) -> dict:
        return {"peak": self.peak, **{f"peak[{k}]": v for k, v in self.windows.items()}}


class NullLedger(SpaceLedger):
    def hold(self, name, nbytes):
        pass

    def release(self, name):
        pass


def ensure(ledger):
    return NullLedger() if ledger is None else ledger
