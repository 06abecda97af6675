"""Checking published target potentials against the transformation engine."""
from pctpdm import verify
from pctpdm.engine import SignConvention

# Every published formula is evaluated on a grid and compared with what the
# engine builds from the mass profile and reference potential. The verdict
# says whether they agree, agree after flipping the shift sign, or disagree
# in structure.
entries = verify.run_corpus()
for e in entries:
    dev = e.deviations[SignConvention.CORRECTED]
    print(f"{e.id:42s} {e.verdict.value:20s} max dev {dev:.2e}")

# The ledger is plain JSON and can be archived next to a run
text = verify.ledger_json(entries)
print(text[:200], "...")
