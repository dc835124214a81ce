"""The per-degree mirror integrals for a two-step flag manifold.

For flag manifolds the series has no known closed inversion, so the
deliverable is the table of integrals over all low degrees, each computed
by the fixed-point oracle with a cross-check against a second weight seed.
"""

from flaghg.mirror import integral_Id
from flaghg.tableaux import FlagSpec

n = 3
print(f"Integrals over Fl_(1,2)(C^{n}) by multi-degree:")
print()
for d1 in range(3):
    for d2 in range(3 - d1):
        spec = FlagSpec(n, (1, 2), (d1, d2))
        result = integral_Id(spec)
        stable = integral_Id(spec, lambda_seed=9).value == result.value
        print(f"d = ({d1},{d2})  [seed-stable: {stable}]")
        print(f"  {result.value.to_text()}")
        if len(result.per_tableau) > 1:
            for t, contribution in result.per_tableau:
                print(f"    {t.rows}: {contribution.to_text()}")
        print()
