from dataclasses import dataclass, field


@dataclass
class Counters:
    """Instrumentation filled in by the construction algorithms.

    ``comparisons`` counts every evaluation of a character equality test,
    the final mismatch included. ``random_accesses`` counts text positions
    reached by a jump rather than by stepping forward: each comparison run
    starts at two such positions.
    """

    comparisons: int = 0
    random_accesses: int = 0
    extra: dict = field(default_factory=dict)

    def bump(self, key: str, amount: int):
        self.extra[key] = self.extra.get(key, 0) + int(amount)
