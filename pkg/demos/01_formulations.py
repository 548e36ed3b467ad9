"""Compare the slack-free step-penalty loss with the slack-variable QUBO.

The step penalty charges a flat fee per violated constraint and needs one
qubit per item.  The slack QUBO squares the constraint residual against a
binary slack register, which adds ceil(log2(W_j + 1)) qubits per
constraint - a large overhead on the bundled benchmark catalog.
"""

from mdkpvqe import (
    bundled_instance,
    bundled_instances,
    compile_custom,
    compile_slack,
    evaluate,
    loss_range,
    qubit_report,
)

inst = bundled_instance("pet2")
print(f"{inst.name}: n={inst.n} items, d={inst.d} constraints, "
      f"optimum {inst.known_optimum}")

custom = compile_custom(inst)
slack = compile_slack(inst)
print(f"step penalty: {custom.total_qubits} qubits, lambda={custom.lambdas[0]}")
print(f"slack QUBO:   {slack.total_qubits} qubits, "
      f"registers {slack.slack_bits}")

# a feasible point scores exactly its negated profit; an infeasible one
# pays the flat penalty per violated constraint
feasible = "0000111100"   # the optimal assignment for the bundled pet2
infeasible = "1111111111"
for bits in (feasible, infeasible):
    lv = evaluate(custom, bits)
    print(f"x={bits}: loss {lv.value:>8}, "
          f"{lv.violated_constraints} violated constraint(s)")

r = loss_range(custom, inst.known_optimum)
print(f"loss range: [{r.lo}, {r.hi}], R = {r.range}")

print("\nqubit counts across the catalog (custom vs slack):")
for row in qubit_report(bundled_instances()):
    print(f"  {row.name:>5}: {row.custom_qubits:>3} vs {row.slack_qubits:>3} "
          f"(+{row.delta})")
