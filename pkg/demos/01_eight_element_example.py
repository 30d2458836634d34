"""Replay the eight-element worked example and look at why one value differs.

Run:  python3 demos/01_eight_element_example.py
"""
import numpy as np

from lattice_ft import direct_transform, figure1_lattice, inverse_transform
from lattice_ft import worked

lat = figure1_lattice()
print("carrier:", " ".join(lat.labels))
print("q meet r =", lat.label(lat.meet(lat.index("q"), lat.index("r"))))
print("s join t =", lat.label(lat.join(lat.index("s"), lat.index("t"))))

part = worked.example_partition(lat)
neg = worked.example_negator(lat)
f = worked.example_signal(lat)
print("\npartition members:")
for label, member in zip(part.labels, part.members):
    print(f"  {label}: {member.labels()}")
print("negator:", {lat.label(e): lat.label(neg(e)) for e in lat.elements})
print("signal f:", f.labels())

print("\ndirect components against the published ones")
for kind, at, published, computed, status in worked.replay_direct(lat):
    print(f"  {kind:<17} {at:<3} published {published:<3} computed {computed:<3} {status}")

# the one flagged value: the lower-eta component of A2 is a meet of
# eta(N(A2(x)), f(x)) over x, and folding it by hand gives p
conns = worked.example_connectives(lat)
a2, eta = part.matrix[1], conns["eta"]
terms = [eta(neg(a), v) for a, v in zip(a2, f.values)]
print("\nlower-eta, A2 terms:", [lat.label(t) for t in terms], "-> meet", lat.label(lat.meet_of(terms)))

print("\nreconstructions from the published components")
for kind, at, published, computed, status in worked.replay_inverse(lat):
    print(f"  {kind:<17} {at:<3} published {published:<3} computed {computed:<3} {status}")

# upper-theta inverse lies above f, lower-residual inverse below it
upper = direct_transform("upper-theta", part, conns["theta"], f)
lower = direct_transform("lower-residual", part, conns["i_theta"], f)
hi = inverse_transform(upper, part, conns["i_theta"])
lo = inverse_transform(lower, part, conns["theta"])
print("\nsandwich:", lo.labels(), "<=", f.labels(), "<=", hi.labels())
print("holds:", bool(np.all(lat.vle(lo.values, f.values)) and np.all(lat.vle(f.values, hi.values))))
