"""Default resource caps.

Every operation that can blow up takes an explicit ``cap`` keyword whose
default is read from :data:`DEFAULT_CAPS` at call time, so tests and the CLI
can tighten or relax them without touching module state.
"""

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    subset_states: int = 20  # |Q| limit for the full powerset automaton
    determinize_states: int = 1_000_000
    monoid_size: int = 100_000
    isomorphism_size: int = 512
    starfree_nodes: int = 50_000
    enumerate_length: int = 16
    track_letters: int = 1 << 20  # |A|·2^(p+q) limit when compiling formulas

    def __post_init__(self):
        for name, value in self.__dict__.items():
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"cap {name} must be a positive integer, got {value!r}")

    def with_(self, **changes) -> "Caps":
        return replace(self, **changes)


DEFAULT_CAPS = Caps()
