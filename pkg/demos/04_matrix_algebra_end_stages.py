"""The six matrix-algebra end stages, each checked against plain numpy.

Every stage initializes its labeled state from the closed-form coefficients
its upstream preparation would produce, then runs the shared final stage
(flag ancilla, labeling CNOT, deterministic extraction).  Matrix and vector
results come back with their magnitude recovered from the branch weight;
phase results are unit complex numbers.
"""

import numpy as np

from qlasim import (
    determinant_phase,
    inner_product_phase,
    linear_stage,
    matrix_add,
    matrix_inverse,
    matrix_mul,
)

rng = np.random.default_rng(2)
a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
b = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
v = rng.standard_normal(4) + 1j * rng.standard_normal(4)


def show(name, got, want):
    err = np.max(np.abs(np.asarray(got) - np.asarray(want)))
    print(f"{name:<18} max error vs numpy: {err:.2e}")


print("random 4x4 complex inputs\n")

report = matrix_add(a, b)
show("addition", report.result.matrix, a + b)

report = matrix_mul(a, b)
show("multiplication", report.result.matrix, a @ b)

report = linear_stage(a, v)
show("contraction a@v", report.result.matrix, a @ v)

report = matrix_inverse(a)
show("inversion", report.result.matrix, np.linalg.inv(a))
print(f"{'':<18} residual |result @ a - I| = "
      f"{np.max(np.abs(report.result.matrix @ a - np.eye(4))):.2e}")

report = determinant_phase(a)
d = np.linalg.det(a)
show("determinant phase", report.result, d / abs(d))
print(f"{'':<18} |det| recovered from branch weight: "
      f"{report.recovered_norm:.6f} vs numpy {abs(d):.6f}")

x, y = rng.standard_normal(8) + 1j * rng.standard_normal(8), \
       rng.standard_normal(8) + 1j * rng.standard_normal(8)
report = inner_product_phase(x, y)
ip = np.sum((y / np.linalg.norm(y)) * (x / np.linalg.norm(x)))
show("inner phase", report.result, ip / abs(ip))

print("\ndegenerate inputs leave the state untouched instead of failing:")
report = matrix_add(a, -a)
print(f"a + (-a): outcome = {report.outcome!r}, result = {report.result!r}")
