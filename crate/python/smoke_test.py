"""Smoke test for the compiled `entrobound` extension.

Build and install it first, e.g. `pip install --no-build-isolation crates/py`.
"""

import json
import math

import entrobound as eb

LN2 = math.log(2.0)


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


def main():
    # 2 h(0.3), mpmath
    r = eb.vn_continuity_bound(0.3, 1.0)
    close(r.value, 1.2217286041097869, 1e-14)
    assert r.in_validity_domain and r.kind == "von-neumann"
    close(float(r.in_base("bits")), r.value / LN2, 1e-13)
    assert not eb.vn_continuity_bound(0.9, 1.0).in_validity_domain
    assert eb.winter_bound_number_op(0.2, 2.0).value > eb.vn_continuity_bound(0.2, 2.0).value
    close(eb.winter_bound_general(0.2, 2.0).value, eb.winter_bound_number_op(0.2, 2.0).value, 1e-12)
    assert json.loads(r.to_json())["kind"] == "von-neumann"

    p = eb.extremal_marginal(0.3, 1.0, 4096)
    close(p.shannon_entropy(), eb.shannon_continuity_bound(0.3, 1.0).value, 1e-8)

    g1, g2 = eb.Distribution.geometric(1.0, 200), eb.Distribution.geometric(2.0, 200)
    tv = eb.total_variation(g1, g2)
    b = eb.classical_renyi_tsallis_bound(g1, g2, 0.8, 0.6)
    assert abs(g1.tsallis_entropy(0.8) - g2.tsallis_entropy(0.8)) <= b.value
    assert 0.0 < tv < 1.0

    rho, sigma = eb.DensityMatrix.from_distribution(g1), eb.DensityMatrix.from_distribution(g2)
    close(eb.trace_distance(rho, sigma), tv, 1e-12)
    gap = abs(eb.von_neumann_entropy(rho) - eb.von_neumann_entropy(sigma))
    assert gap <= eb.vn_continuity_bound(tv, 2.0).value

    plus = eb.DensityMatrix([[0.5, 0.5], [0.5, 0.5]])
    assert not plus.is_diagonal()
    close(eb.von_neumann_entropy(plus), 0.0, 1e-12)
    close(eb.trace_distance(plus, eb.DensityMatrix.fock(0, 2)), math.sqrt(0.5), 1e-12)
    back = eb.DensityMatrix.from_json(plus.to_json())
    close(eb.fidelity(plus, back), 1.0, 1e-12)

    a = eb.random_density_matrix(7, 6)
    c = eb.random_density_matrix(8, 6)
    lip = eb.tsallis_lipschitz_bound(a, c, 2.0)
    assert abs(eb.quantum_tsallis(a, 2.0) - eb.quantum_tsallis(c, 2.0)) <= lip.value + 1e-12
    pa = eb.passive_state(a)
    assert eb.energy(pa) <= eb.energy(a) + 1e-12

    assert eb.moment_bound_f1(rho).diagnostics["slack"] >= -1e-12
    assert eb.moment_bound_falpha(rho, 0.9).diagnostics["slack"] >= -1e-12

    lo, hi = eb.beta_log_z(0.01)
    assert 0.25 < lo <= hi and hi - lo < 0.05
    w = eb.divergence_witness(0.4, 10**7)
    assert w["trace_power"][0] <= w["trace_power"][1]

    try:
        eb.vn_continuity_bound(-0.1, 1.0)
    except eb.EntroboundError as e:
        assert isinstance(e, ValueError)
    else:
        raise AssertionError("negative eps accepted")

    print("python smoke test: OK")


if __name__ == "__main__":
    main()
