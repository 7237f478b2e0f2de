"""
Cross-checking against brute force
==================================

Every solver in the package has a naive counterpart.  ``verify_instance``
runs all of them on one graph and partition and reports disagreements.
"""
import json

import numpy as np

from treesplit.generators import random_divisible_instance
from treesplit.verify import verify_instance

rng = np.random.default_rng(42)
total = failed = 0
for i in range(20):
    psi, blocks = random_divisible_instance(6, 3, 0.4, weights=(1, 3), seed=rng)
    report = verify_instance(psi, blocks, f"instance-{i}")
    total += len(report.results)
    failed += len(report.violations)
print(f"{total} checks, {failed} violations")
print(json.dumps(report.to_dict()["results"][:3], indent=2))
