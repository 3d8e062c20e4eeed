from dataclasses import dataclass, field

from ._bits import fmt_rank, fmt_set, fmt_vector


@dataclass
class Verdict:
    """Outcome of an axiom checker.

    ``checked`` lists the axioms in the order they were evaluated and
    ``failures`` maps each failing axiom to its witnesses, least first.
    Axioms in ``skipped`` could not be evaluated (usually because a
    prerequisite axiom failed).  A verdict is truthy iff nothing failed.
    """

    kind: str
    checked: tuple
    failures: dict = field(default_factory=dict)
    skipped: tuple = ()

    def __bool__(self):
        return not self.failures

    @property
    def ok(self):
        return not self.failures

    @property
    def failed(self):
        return tuple(a for a in self.checked if a in self.failures)

    def witness(self, axiom):
        return self.failures[axiom][0]

    def report_lines(self):
        lines = [f"axioms {self.kind}: {'PASS' if self.ok else 'FAIL'}"]
        for axiom in self.checked:
            if axiom in self.failures:
                wit = self.failures[axiom]
                lines.append(f"{axiom}: fail {fmt_witness(wit[0])}"
                             + (f" (+{len(wit) - 1} more)" if len(wit) > 1 else ""))
            elif axiom in self.skipped:
                lines.append(f"{axiom}: skipped")
            else:
                lines.append(f"{axiom}: ok")
        return lines


def fmt_witness(witness):
    parts = []
    for key, value in witness.items():
        if isinstance(value, tuple):
            parts.append(f"{key}={fmt_vector(value)}")
        elif key in ("A", "B", "C", "X", "meet", "join") and isinstance(value, int):
            parts.append(f"{key}={fmt_set(value)}")
        else:
            parts.append(f"{key}={fmt_rank(value) if not isinstance(value, str) else value}")
    return " ".join(parts)
