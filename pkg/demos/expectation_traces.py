"""Coherent-state expectation traces for both oscillator models.

Evolves <(a†)^n (a†a)^m> under the deformed Hamiltonian (series form) and
under the quadratic-spectrum Hamiltonian (both series and closed forms),
then prints a short table.  The anharmonic magnitude shows the familiar
collapse of the initial amplitude followed by a full revival at t = pi/omega2.
"""

import numpy as np

from qdosc import (
    Anharmonic,
    LambdaIndex,
    QOsc,
    evolve_anharmonic_closed,
    evolve_anharmonic_expectation,
    evolve_q_expectation,
)

alpha = 0.8
idx = LambdaIndex(1, 0)

q_model = QOsc(q=1.2)
taus = np.linspace(0.0, 10.0, 11)
q_trace = evolve_q_expectation(q_model, alpha, idx, taus)

print(f"deformed model, q = {q_model.q}, alpha = {alpha}, index (n,m) = {tuple(idx)}")
print(f"{'tau':>6} {'re':>12} {'im':>12} {'abs':>12}")
for tau, v in zip(q_trace.times, q_trace.values):
    print(f"{tau:6.1f} {v.real:12.6f} {v.imag:12.6f} {abs(v):12.6f}")
print(f"series truncation tail: {q_trace.truncation_tail:.2e}")

anh = Anharmonic(omega1=10.0, omega2=1.0)
revival = np.pi / anh.omega2
times = np.linspace(0.0, revival, 9)
series = evolve_anharmonic_expectation(anh, alpha, idx, times)
closed = evolve_anharmonic_closed(anh, alpha, idx, times)

print()
print(f"anharmonic model (omega1, omega2) = ({anh.omega1}, {anh.omega2})")
print(f"{'t':>8} {'|series|':>12} {'|closed|':>12} {'difference':>12}")
for t, s, c in zip(times, series.values, closed.values):
    print(f"{t:8.4f} {abs(s):12.6f} {abs(c):12.6f} {abs(s - c):12.2e}")
print(f"initial magnitude {abs(series.values[0]):.6f} collapses and revives at "
      f"t = pi/omega2 = {revival:.4f}")
