"""
Running the identity suite
==========================

Every identity is re-derived numerically with seeded samples; the same seed
gives the same report, byte for byte.
"""

from deformcalc.verifier import check_names, run_suite

print(len(check_names()), "checks")
report = run_suite(seed=42, samples=128)
for e in report.entries:
    mark = "ok  " if e.passed else "FAIL"
    print(f"{mark} {e.name:<34} residual {e.max_residual:9.2e}  tol {e.tolerance:.0e}")
print("all passed:", report.passed)

# a subset, and determinism
sub = run_suite(seed=42, select="leibniz")
print([e.name for e in sub.entries])
print("deterministic:", run_suite(seed=42).to_json() == report.to_json())
