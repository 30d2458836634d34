"""Run the law suite on three contexts and compare what holds where.

Run:  python3 demos/02_law_suite.py
"""
from collections import Counter

from lattice_ft import LawContext, Negator, Universe, block_partition, chain, chain_reversal, closed_form
from lattice_ft import figure1_lattice, run_law, run_suite, suite_table

# 1. the worked-example context: meet/join, derived implicators, involutive N
ctx = LawContext.figure1()
reports = run_suite(ctx)
print("figure1:", dict(Counter(r.status for r in reports)))
print("  not applicable here:", [r.id for r in reports if r.status == "hypothesis-not-met"])

# 2. same context with the literal closed-form co-residual: adjointness breaks
literal = LawContext.figure1(literal_coresidual=True)
failed = [r for r in run_suite(literal) if r.status == "failed"]
print(f"\nliteral co-residual: {len(failed)} laws fail")
print(suite_table(failed[:3], literal.lattice))
# every witness is a concrete tuple that fails again on replay
print("  first witness replays as a failure:", failed[0].replay() is False)

# 3. a non-involutive negator switches the duality laws off instead of passing them
lat = figure1_lattice()
strong = Negator(lat, table=[lat.top] + [lat.bottom] * (len(lat) - 1), name="strong")
gated = LawContext(lat, ctx.theta, ctx.eta, strong, partition=ctx.partition)
r = run_law("P3.1", gated)
print(f"\nstrong negator, P3.1: {r.status} ({r.unmet})")

# 4. a chain with its order reversal and a two-block partition: again nothing fails
c5 = chain(5)
part = block_partition(Universe.of_size(3), c5, [[0, 1], [2]], spread=2)
chain_ctx = LawContext(c5, closed_form("theta_M", c5), closed_form("eta_M", c5), chain_reversal(c5), partition=part)
chain_reports = run_suite(chain_ctx)
print("\nchain(5):", dict(Counter(r.status for r in chain_reports)))
print("  not applicable here:", [r.id for r in chain_reports if r.status == "hypothesis-not-met"])
