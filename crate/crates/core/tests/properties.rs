use std::f64::consts::LN_2;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qentropy::circuit::{
    emit_circuit, output_spectrum, overlap, parse_circuit, partial_trace, reduced_state, simulate, Circuit,
    DensityMatrix, Gate, StateVector,
};
use qentropy::entropy::{
    jensen_divergence, min_binary, quantum_entropy, renyi_binary, tsallis_binary, tsallis_half, DivergenceFamily,
    Family, Order,
};
use qentropy::estimators::{swap_test_prob, swap_test_sample, ShotPlan};
use qentropy::reduction::{
    build_instance, emit_instance, infidelity_gadget, parse_instance, rank2_mixer, synthesize_bqp_instance,
    verify_instance, Verdict,
};

fn gate(width: usize) -> impl Strategy<Value = Gate> {
    let w = 0..width;
    prop_oneof![
        w.clone().prop_map(Gate::H),
        w.clone().prop_map(Gate::X),
        (w.clone(), -4.0f64..4.0).prop_map(|(t, theta)| Gate::Ry { theta, target: t }),
        (w.clone(), 1..width.max(2)).prop_map(move |(c, d)| Gate::Cnot { control: c, target: (c + d) % width }),
        (w, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(t, a, b)| {
            // exp(i a) * RY(b)
            let (c, s) = ((b / 2.0).cos(), (b / 2.0).sin());
            let p = Complex64::from_polar(1.0, a);
            Gate::Unitary { matrix: [[p * c, -p * s], [p * s, p * c]], target: t }
        }),
    ]
}

fn circuit(width: usize, max_gates: usize) -> impl Strategy<Value = Circuit> {
    proptest::collection::vec(gate(width), 0..max_gates).prop_map(move |gates| {
        let gates: Vec<Gate> = gates
            .into_iter()
            .filter(|g| !matches!(g, Gate::Cnot { control, target } if control == target))
            .collect();
        let mut c = Circuit::all_outputs(width);
        c.extend(gates).unwrap();
        c
    })
}

/// A circuit with a controlled block and an adjoint block, exercising nesting.
fn nested_circuit() -> impl Strategy<Value = Circuit> {
    (circuit(3, 6), circuit(3, 6)).prop_map(|(a, b)| {
        let mut c = Circuit::all_outputs(4);
        c.extend(a.gates().iter().cloned()).unwrap();
        c.push(Gate::H(3)).unwrap();
        c.push(Gate::Controlled { control: 3, body: b.gates().to_vec() }).unwrap();
        c.push(Gate::Adjoint(a.gates().to_vec())).unwrap();
        c
    })
}

fn random_state(rng: &mut ChaCha8Rng, width: usize) -> StateVector {
    let amps = (0..1usize << width)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

/// Random mixed state on `n` qubits: reduced state of a random pure state
/// on n + k qubits.
fn random_mixed(rng: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let k = rng.gen_range(0..=n);
    let psi = random_state(rng, n + k);
    partial_trace(&psi, &(0..n).collect::<Vec<_>>()).unwrap()
}

fn any_order() -> impl Strategy<Value = f64> {
    prop_oneof![0.05f64..0.99, 1.01f64..1.99, 2.01f64..2.99, 3.01f64..12.0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjoint_undoes_a_circuit(c in nested_circuit(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(&mut rng, 4);
        let out = simulate(&c, &psi).unwrap();
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
        let back = simulate(&c.adjoint(), &out).unwrap();
        prop_assert!((overlap(&psi, &back).unwrap().norm() - 1.0).abs() < 1e-10);
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn text_format_round_trips(c in nested_circuit()) {
        let text = emit_circuit(&c);
        let back = parse_circuit(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(emit_circuit(&back), text);
    }

    #[test]
    fn reduced_states_are_valid(c in circuit(4, 14), keep in 1usize..=3) {
        let c = c.widened(4, (0..keep).collect()).unwrap();
        let rho = reduced_state(&c, &StateVector::zero(4)).unwrap();
        let d = rho.dim() as f64;
        let p = rho.purity();
        prop_assert!(p >= 1.0 / d - 1e-12 && p <= 1.0 + 1e-12);
        let spec = rho.spectrum();
        prop_assert!((spec.iter().sum::<f64>() - 1.0).abs() < 1e-10);
        let psi = simulate(&c, &StateVector::zero(4)).unwrap();
        let small = output_spectrum(&psi, c.outputs()).unwrap();
        for (a, b) in spec.iter().zip(&small) {
            prop_assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn renyi_order_chain_on_spectra(seed in any::<u64>(), a in any_order(), b in any_order()) {
        let (a, b) = (a.min(b), a.max(b));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let spec = random_mixed(&mut rng, n).spectrum();
        let s = |o: Order| quantum_entropy(&spec, o, Family::Renyi).unwrap();
        let (sa, sb, sinf) = (s(Order::of(a)), s(Order::of(b)), s(Order::Infinity));
        prop_assert!(sa >= sb - 1e-12);
        prop_assert!(sinf <= sb + 1e-12);
        prop_assert!(sa <= (n as f64) * LN_2 + 1e-12);
    }

    #[test]
    fn binary_inequalities_off_grid(x in 0.0f64..=1.0, q in any_order()) {
        let o = Order::of(q);
        if q <= 2.0 || q >= 3.0 {
            let lower = tsallis_half(o).unwrap() * 4.0 * x * (1.0 - x);
            prop_assert!(tsallis_binary(x, o).unwrap() >= lower - 1e-12);
        }
        let hr2 = renyi_binary(x, Order::of(2.0)).unwrap();
        prop_assert!(hr2 <= 2.0 * min_binary(x).unwrap() + 1e-12);
        let shannon = renyi_binary(x, Order::One).unwrap();
        prop_assert!(renyi_binary(x, o).unwrap() >= shannon - 1e-12 || q > 1.0);
    }

    #[test]
    fn swap_probability_matches_purity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let rho = random_mixed(&mut rng, n);
        let tr2: f64 = rho.spectrum().iter().map(|l| l * l).sum();
        prop_assert!((swap_test_prob(&rho, &rho).unwrap() - (1.0 + tr2) / 2.0).abs() < 1e-10);
    }

    #[test]
    fn sampling_is_reproducible(seed in any::<u64>(), shots in 1u64..2000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_mixed(&mut rng, 2), random_mixed(&mut rng, 2));
        let plan = ShotPlan::new(shots, seed).unwrap();
        let s = swap_test_sample(&a, &b, &plan).unwrap();
        prop_assert_eq!(s, swap_test_sample(&a, &b, &plan).unwrap());
        prop_assert_eq!(s.zeros + s.ones, shots);
    }

    #[test]
    fn gadget_mixers_have_rank_at_most_two(c in circuit(3, 10), out in 0usize..3, p_yes in any::<bool>()) {
        let c = c.widened(3, vec![out]).unwrap();
        let (q0, q1) = infidelity_gadget(&c).unwrap();
        let mix = rank2_mixer(&q0, &q1).unwrap();
        let psi = simulate(&mix, &StateVector::zero(mix.width())).unwrap();
        let spec = output_spectrum(&psi, mix.outputs()).unwrap();
        prop_assert!(spec.iter().filter(|l| **l > 1e-9).count() <= 2);

        // the yes side of the promise always verifies
        let n = 3u32;
        let p = if p_yes { 1.0 } else { 1.0 - 2f64.powi(-(n as i32) - 1) };
        let inst = build_instance(&synthesize_bqp_instance(n as usize - 1, p).unwrap(), Family::Tsallis, Order::of(2.0))
            .unwrap();
        prop_assert_eq!(verify_instance(&inst).unwrap().verdict, Verdict::Yes);
    }

    #[test]
    fn instance_files_round_trip(p in 0.0f64..=1.0, n in 2usize..6, q in 0.5f64..6.0, renyi in any::<bool>()) {
        let family = if renyi { Family::Renyi } else { Family::Tsallis };
        let order = Order::of(q);
        let Ok(inst) = build_instance(&synthesize_bqp_instance(n - 1, p).unwrap(), family, order) else {
            return Ok(());
        };
        let text = emit_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(emit_instance(&back), text);
        prop_assert_eq!(back.mixer, inst.mixer);
    }
}

/// Jensen-type divergence of two pure states equals the binary entropy of
/// (1 - |overlap|)/2, for Tsallis and Renyi alike.
#[test]
fn pure_pair_divergence_is_binary_entropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0333);
    let orders: Vec<f64> = (0..20).map(|_| rng.gen_range(0.1..8.0)).collect();
    let mut worst = 0.0f64;
    for i in 0..500 {
        let width = 2 + i % 5;
        let (a, b) = (random_state(&mut rng, width), random_state(&mut rng, width));
        let x = (1.0 - overlap(&a, &b).unwrap().norm()) / 2.0;
        let (ra, rb) = (DensityMatrix::from_pure(&a), DensityMatrix::from_pure(&b));
        // one order per pair through the public divergence, all orders on
        // the shared spectrum
        let q = orders[i % orders.len()];
        for (fam, binary) in [
            (DivergenceFamily::Tsallis, tsallis_binary(x, Order::of(q)).unwrap()),
            (DivergenceFamily::Renyi, renyi_binary(x, Order::of(q)).unwrap()),
        ] {
            worst = worst.max((jensen_divergence(&ra, &rb, Order::of(q), fam).unwrap() - binary).abs());
        }
        let spec = DensityMatrix::average(&ra, &rb).unwrap().spectrum();
        for &q in &orders {
            let o = Order::of(q);
            worst = worst.max((quantum_entropy(&spec, o, Family::Tsallis).unwrap() - tsallis_binary(x, o).unwrap()).abs());
            worst = worst.max((quantum_entropy(&spec, o, Family::Renyi).unwrap() - renyi_binary(x, o).unwrap()).abs());
        }
    }
    assert!(worst <= 1e-9, "max deviation {worst:e}");
}

/// 2 QJS(rho0, rho1) = S(avg (x) avg) - S(rho0 (x) rho1), tensors built
/// explicitly.
#[test]
fn doubled_js_divergence_as_tensor_entropies() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0011);
    let vn = |rho: &DensityMatrix| quantum_entropy(&rho.spectrum(), Order::One, Family::Renyi).unwrap();
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let (r0, r1) = (random_mixed(&mut rng, n), random_mixed(&mut rng, n));
        let avg = DensityMatrix::average(&r0, &r1).unwrap();
        let js = jensen_divergence(&r0, &r1, Order::One, DivergenceFamily::ShannonJs).unwrap();
        let rhs = vn(&avg.tensor(&avg)) - vn(&r0.tensor(&r1));
        assert!((2.0 * js - rhs).abs() <= 1e-8, "{} vs {rhs}", 2.0 * js);
        assert!(js >= -1e-12 && js <= LN_2 + 1e-12);
    }
}
