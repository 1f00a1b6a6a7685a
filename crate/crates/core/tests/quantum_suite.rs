use entrobound::modulus::UniversalConstant;
use entrobound::qbounds::{
    divergence_witness, extremal_state_pair, minimal_constant, moment_bound_f1,
    moment_bound_falpha, quantum_renyi_tsallis_bound, renyi_alpha_gt1_bound,
    tsallis_lipschitz_bound, vn_continuity_bound, winter_bound_general, winter_bound_number_op,
    ApproxBoundInputs, MomentVariant, RenyiCondition,
};
use entrobound::quantum::{
    energy, fidelity, gibbs_entropy, passive_state, quantum_renyi, quantum_tsallis,
    trace_distance, von_neumann_entropy, DensityMatrix, HamiltonianSpec,
};
use entrobound::rng::SplitMix64;
use entrobound::sampling::{
    random_density_matrix, random_diagonal_state, random_mean_constrained, random_unitary, rotate,
};

fn random_pair(rng: &mut SplitMix64, d: usize, e: f64) -> (DensityMatrix, DensityMatrix) {
    let rho = random_diagonal_state(rng, d, e).unwrap();
    if rng.next_f64() < 0.5 {
        return (rho, random_diagonal_state(rng, d, e).unwrap());
    }
    let p = random_mean_constrained(rng, d, e).unwrap();
    let u = random_unitary(rng, d);
    (rho, rotate(&p, &u).unwrap())
}

#[test]
fn structural_invariants() {
    for i in 0..150u64 {
        let mut rng = SplitMix64::for_trial(21, i);
        let d = 2 + rng.below(14) as usize;
        let rho = random_density_matrix(&mut rng, d).unwrap();
        let sigma = random_density_matrix(&mut rng, d).unwrap();
        let t = trace_distance(&rho, &sigma).unwrap();
        let f = fidelity(&rho, &sigma).unwrap();
        assert!(1.0 - f <= t + 1e-9 && t <= (1.0 - f * f).max(0.0).sqrt() + 1e-9);

        let (pr, ps) = (passive_state(&rho), passive_state(&sigma));
        assert!(trace_distance(&pr, &ps).unwrap() <= t + 1e-12);
        assert!((von_neumann_entropy(&pr) - von_neumann_entropy(&rho)).abs() < 1e-10);
        let n = HamiltonianSpec::Number;
        assert!(energy(&pr, &n).unwrap() <= energy(&rho, &n).unwrap() + 1e-12);
    }
}

#[test]
fn gibbs_maximality() {
    for i in 0..200u64 {
        let mut rng = SplitMix64::for_trial(22, i);
        let e = rng.uniform(0.1, 5.0);
        let rho = random_diagonal_state(&mut rng, 64, e).unwrap();
        let en = energy(&rho, &HamiltonianSpec::Number).unwrap();
        assert!(von_neumann_entropy(&rho) <= gibbs_entropy(en) + 1e-8);
    }
}

#[test]
fn vn_dominance_and_extremal_pair() {
    for i in 0..200u64 {
        let mut rng = SplitMix64::for_trial(23, i);
        let e = rng.uniform(0.25, 3.0);
        let d = 2 + rng.below(20) as usize;
        let (rho, sigma) = random_pair(&mut rng, d, e);
        let n = HamiltonianSpec::Number;
        let e_max = energy(&rho, &n).unwrap().max(energy(&sigma, &n).unwrap()).max(1e-12);
        let eps = trace_distance(&rho, &sigma).unwrap();
        let gap = (von_neumann_entropy(&rho) - von_neumann_entropy(&sigma)).abs();
        let b = vn_continuity_bound(eps.min(1.0), e_max).unwrap();
        if b.in_validity_domain {
            assert!(gap <= b.value + 1e-10);
        }
    }
    let (r, s) = extremal_state_pair(0.3, 1.0, 4096, 1e-9).unwrap();
    let gap = von_neumann_entropy(&r) - von_neumann_entropy(&s);
    assert!((gap - vn_continuity_bound(0.3, 1.0).unwrap().value).abs() <= 1e-8);
}

#[test]
fn winter_paths_agree_and_dominate() {
    for ei in 0..20 {
        let e = 0.1 * (1000f64).powf(ei as f64 / 19.0);
        for k in 1..=20 {
            let eps = (e / (e + 1.0)) * k as f64 / 20.0;
            let g = winter_bound_general(eps, e).unwrap().value;
            let w = winter_bound_number_op(eps, e).unwrap().value;
            assert!((g - w).abs() <= 1e-12 * w.max(1.0), "E={e} eps={eps}");
            assert!(w - vn_continuity_bound(eps, e).unwrap().value >= 0.0);
        }
    }
}

#[test]
fn alpha_gt1_dominance() {
    for i in 0..200u64 {
        let mut rng = SplitMix64::for_trial(24, i);
        let d = 2 + rng.below(16) as usize;
        let (rho, sigma) = random_pair(&mut rng, d, 2.0);
        let alpha = rng.uniform(1.1, 3.0);
        let b = tsallis_lipschitz_bound(&rho, &sigma, alpha).unwrap();
        let dt = (quantum_tsallis(&rho, alpha).unwrap() - quantum_tsallis(&sigma, alpha).unwrap()).abs();
        assert!(b.value >= dt - 1e-12);
    }
    // Ĥ = N̂+1, α = 3, split 1/2
    let ham = HamiltonianSpec::ShiftedNumber;
    for i in 0..100u64 {
        let mut rng = SplitMix64::for_trial(25, i);
        let rho = random_diagonal_state(&mut rng, 24, 1.0).unwrap();
        let sigma = random_diagonal_state(&mut rng, 24, 1.0).unwrap();
        let cond = RenyiCondition::Hamiltonian { ham: ham.clone(), energy: 2.0, beta_split: 0.5 };
        let b = renyi_alpha_gt1_bound(&rho, &sigma, 3.0, &cond).unwrap();
        let dr = (quantum_renyi(&rho, 3.0).unwrap() - quantum_renyi(&sigma, 3.0).unwrap()).abs();
        assert!(b.value >= dr - 1e-12);
    }
}

#[test]
fn moment_inequalities() {
    let ham = HamiltonianSpec::ShiftedNumber;
    for i in 0..100u64 {
        let mut rng = SplitMix64::for_trial(26, i);
        let e = rng.uniform(0.2, 4.0);
        let rho = random_diagonal_state(&mut rng, 48, e).unwrap();
        let f1 = moment_bound_f1(&rho, &ham).unwrap();
        assert!(f1.diagnostic_value("slack").unwrap() >= -1e-12);
        let half = moment_bound_falpha(&rho, &ham, 0.8, MomentVariant::HalfPower).unwrap();
        assert!(half.diagnostic_value("slack").unwrap() >= -1e-12);
        let gen = moment_bound_falpha(&rho, &ham, 0.8, MomentVariant::General(0.3)).unwrap();
        assert!(gen.diagnostic_value("slack").unwrap() >= -1e-12);
    }
}

#[test]
fn approximation_bound_reports_calibration() {
    let mut rng = SplitMix64::new(27);
    let rho = random_diagonal_state(&mut rng, 64, 1.0).unwrap();
    let sigma = random_diagonal_state(&mut rng, 64, 1.0).unwrap();
    let inputs = ApproxBoundInputs::new(
        rho.clone(), sigma.clone(), HamiltonianSpec::ShiftedNumber, 1.0, 10.0, 0.1, 0.5, 2.0,
    )
    .unwrap();
    let report = quantum_renyi_tsallis_bound(&inputs, UniversalConstant::default()).unwrap();
    let actual = (quantum_tsallis(&rho, 0.5).unwrap() - quantum_tsallis(&sigma, 0.5).unwrap()).abs();
    let c_min = minimal_constant(&report, actual);
    assert!(c_min.is_finite() && c_min >= 0.0);
    if report.value >= actual {
        assert!(c_min <= 1.0);
    }
}

#[test]
fn divergence_witness_brackets() {
    let small = divergence_witness(0.4, 1_000).unwrap();
    let large = divergence_witness(0.4, 10_000_000).unwrap();
    assert!(large.trace_power.0 > small.trace_power.1);
    assert!(large.energy_partial.0 <= large.energy_limit.1);
    assert!(large.energy_limit.1 - large.energy_limit.0 < 1e-6);
}
