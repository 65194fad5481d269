"""Smoke test for the pyweylqubit extension module.

Build and install first, e.g. ``pip install ./crates/python``.
"""

import json
import math

import pyweylqubit as wq


def check(name, ok):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}")
    return ok


def main():
    results = []
    a_plus, a_minus, a1, a2, a3 = wq.generators()
    identity = wq.Element.identity()

    results.append(check("a1 a2 = i a3", (a1 * a2).equals(a3.scale_exact(1, 1, 1, 2))))
    results.append(check("a3 squared is identity", (a3 * a3).equals(identity)))
    results.append(check("a+ squares to zero", (a_plus * a_plus).is_zero()))

    v = wq.Element.v(1)
    results.append(check("[a3, V] is nonzero", not a3.commutator(v).is_zero()))
    results.append(check("V1 lies in the commutant", wq.in_commutant(wq.v1())))

    blocks = wq.split(v)
    results.append(check("split of V recombines", wq.recombine(blocks).equals(v)))
    x = wq.Element.word(1, 3, -2) + v.scale_exact(1, 2)
    tree = wq.extract_qubits(x, 2)
    results.append(check("two-qubit extraction recombines", len(tree) == 4 and wq.recombine_qubits(tree).equals(x)))

    element = wq.Element.from_json(x.to_json())
    results.append(check("JSON round trip", element.equals(x)))

    m = a3.matrix(4)
    results.append(check("a3 is the parity on the window", [m[i][i].real for i in range(9)] == [1, -1, 1, -1, 1, -1, 1, -1, 1]))

    reps = wq.gns_rep({0: 0.6, 2: 0.8j})
    results.append(check("GNS image of a1 is sigma_x", abs(reps[1][0][1] - 1) < 1e-12 and abs(reps[1][0][0]) < 1e-12))

    for report in (wq.verify_pauli(), wq.verify_commutant(16), wq.verify_factor(), wq.verify_qudit(3, 16)):
        results.append(check(f"suite: {report.title} ({len(report)} entries)", report.all_pass))

    fidelity, leakage, _, _ = wq.verify_gate("phase", math.pi / 2)
    results.append(check("optical phase gate", fidelity > 1 - 1e-10 and leakage < 1e-10))
    fidelity, leakage, _, _ = wq.verify_gate("controlled_z")
    results.append(check("optical controlled-Z", fidelity > 1 - 1e-10 and leakage < 1e-10))

    circuit = json.dumps({
        "space": {"paths": 2, "polarization": False, "l_max": 8},
        "stages": [
            {"kind": "beam_splitter", "i": 0, "j": 1},
            {"kind": "dove_prism", "path": 1, "alpha": math.pi},
            {"kind": "beam_splitter", "i": 0, "j": 1},
        ],
    })
    out = json.loads(wq.simulate(circuit, json.dumps({"entries": [{"path": 0, "ell": 3, "re": 1.0}]})))
    results.append(check("sorter keeps odd OAM on the input path", [e["path"] for e in out["entries"]] == [0]))

    try:
        wq.Element.from_json('[{"theta": "1/0", "ell": 0, "coeff": {"mag": "1", "phase": "0"}}]')
        results.append(check("malformed JSON raises", False))
    except ValueError as e:
        results.append(check("malformed JSON raises", "term 0" in str(e)))

    passed = sum(results)
    print(f"{passed}/{len(results)} passed")
    raise SystemExit(0 if passed == len(results) else 1)


if __name__ == "__main__":
    main()
