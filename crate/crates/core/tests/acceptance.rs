#![allow(clippy::needless_range_loop, clippy::type_complexity)]

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylqubit::gns::{gns_rep, gram_matrix, gram_rank, pauli_matrices, qubit_basis, qubit_trace, ReferenceState};
use weylqubit::optics::verify_optics;
use weylqubit::qubit::{
    build_generators, extract_qubits, factor_check, in_commutant, reconstruct_u, reconstruct_v, split, u1, v1, verify_pauli,
    w1,
};
use weylqubit::qudit::verify_qudit;
use weylqubit::report::identity_entry;
use weylqubit::{AlgebraElement, Rational, RationalAngle, Scalar, Window};

const ORACLE_TOL: f64 = 1e-12;
const GATE_TOL: f64 = 1e-10;

struct Outcome {
    ok: bool,
    detail: String,
    elapsed: Duration,
}

fn run(limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let detail = match limit {
        Some(l) if !in_time => format!("{detail}; exceeded {:.0?}", l),
        _ => detail,
    };
    Outcome { ok: ok && in_time, detail, elapsed }
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0fa1)
}

fn random_angle(r: &mut ChaCha8Rng) -> RationalAngle {
    let q = [1, 2, 3, 4, 5, 6, 8, 12][r.gen_range(0..8)];
    RationalAngle::new(r.gen_range(0..2 * q), q)
}

fn random_coeff(r: &mut ChaCha8Rng) -> Scalar {
    let q = [1, 2, 3, 4, 6][r.gen_range(0..5)];
    let mag = Scalar::rational(r.gen_range(1..5), r.gen_range(1..4));
    let ph = Scalar::phase_pi(Rational::new(r.gen_range(0..2 * q), q)).unwrap();
    mag.mul(&ph).unwrap()
}

fn random_element(r: &mut ChaCha8Rng, max_terms: usize) -> AlgebraElement {
    let n = r.gen_range(1..=max_terms);
    let terms: Vec<_> = (0..n).map(|_| (random_coeff(r), random_angle(r), r.gen_range(-3..=3i64))).collect();
    AlgebraElement::from_terms(terms).unwrap()
}

fn criterion_1() -> (bool, String) {
    let r = verify_pauli(Some(Window::new(32).unwrap())).unwrap();
    let both = r.entries.iter().all(|e| e.symbolic == Some(true) && e.oracle == Some(true) && e.residual <= ORACLE_TOL);
    let ok = r.entries.len() == 12 && r.all_pass() && both;
    (ok, format!("{} identities, all exact and oracle-confirmed at l_max=32: {both}", r.entries.len()))
}

fn criterion_2() -> (bool, String) {
    let mut r = rng();
    let id = AlgebraElement::identity();
    let mut ok = u1(RationalAngle::pi()).unwrap().equals(&id).unwrap();
    let v1_pow = |l: i64| -> AlgebraElement {
        let base = if l >= 0 { v1() } else { v1().adjoint().unwrap() };
        base.pow(l.unsigned_abs() as u32).unwrap()
    };
    let mut checks = 1;
    for _ in 0..50 {
        let t = random_angle(&mut r);
        let t2 = random_angle(&mut r);
        let l = r.gen_range(-4..=4i64);
        let ut = u1(t).unwrap();
        let sum = RationalAngle::from_turns_pi(t.pi_multiple() + t2.pi_multiple());
        ok &= ut.try_mul(&u1(t2).unwrap()).unwrap().equals(&u1(sum).unwrap()).unwrap();
        let vl = v1_pow(l);
        let phase = Scalar::phase_pi(t.pi_multiple() * Rational::from_integer(2 * l)).unwrap();
        let lhs = ut.try_mul(&vl).unwrap();
        let rhs = vl.try_mul(&ut).unwrap().try_scale(&phase).unwrap();
        ok &= lhs.equals(&rhs).unwrap();
        ok &= in_commutant(&w1(t, l).unwrap()).unwrap();
        checks += 3;
    }
    (ok, format!("{checks} exact identities over 50 random angles"))
}

fn criterion_3() -> (bool, String) {
    let mut r = rng();
    let mut ok = reconstruct_v().unwrap().equals(&AlgebraElement::v_pow(1)).unwrap();
    for _ in 0..20 {
        let t = random_angle(&mut r);
        ok &= reconstruct_u(t).unwrap().equals(&AlgebraElement::u(t)).unwrap();
    }
    (ok, "V and 20 random U(θ) rebuilt exactly".into())
}

fn criterion_4() -> (bool, String) {
    let r = factor_check(Window::new(16).unwrap()).unwrap();
    let dim = r.get("joint commutant interior dimension").map(|e| e.lhs.clone()).unwrap_or_default();
    (r.all_pass(), format!("{}/{} checks, joint commutant dimension {dim}", r.entries.iter().filter(|e| e.passed()).count(), r.entries.len()))
}

fn criterion_5() -> (bool, String) {
    let mut r = rng();
    let mut round_trip = 0;
    let mut members = 0;
    for _ in 0..100 {
        let x = random_element(&mut r, 6);
        let d = split(&x).unwrap();
        if d.recombine().unwrap().equals(&x).unwrap() {
            round_trip += 1;
        }
        if d.blocks.iter().flatten().all(|b| in_commutant(b).unwrap()) {
            members += 1;
        }
    }
    (round_trip == 100 && members == 100, format!("round trip {round_trip}/100, commutant blocks {members}/100"))
}

fn criterion_6() -> (bool, String) {
    let mut r = rng();
    let mut ok = true;
    let mut count = 0;
    for n in 1..=3 {
        for (p, q, l) in [(0, 1, 1), (1, 1, -1), (1, 2, 2), (2, 3, -3), (5, 4, 0), (7, 6, 5)] {
            let w = AlgebraElement::word(RationalAngle::new(p, q), l);
            ok &= extract_qubits(&w, n).unwrap().recombine().unwrap().equals(&w).unwrap();
            count += 1;
        }
    }
    for _ in 0..20 {
        let mut x = random_element(&mut r, 3);
        while x.len() < 3 {
            x = random_element(&mut r, 3);
        }
        ok &= extract_qubits(&x, 2).unwrap().recombine().unwrap().equals(&x).unwrap();
        count += 1;
    }
    (ok, format!("{count} exact round trips"))
}

fn criterion_7() -> (bool, String) {
    let mut r = rng();
    let pauli = pauli_matrices();
    let basis = qubit_basis();
    let mut worst = 0.0f64;
    let mut ranks_ok = true;
    let mut hom = true;
    for _ in 0..10 {
        let n = r.gen_range(1..=4);
        let amps: Vec<_> =
            (0..n).map(|_| (2 * r.gen_range(-4..=4i64), Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)))).collect();
        let psi = ReferenceState::normalized(amps).unwrap();
        let rep = gns_rep(&psi).unwrap();
        for k in 0..4 {
            for i in 0..2 {
                for j in 0..2 {
                    worst = worst.max((rep.matrices[k][(i, j)] - pauli[k][(i, j)]).norm());
                }
            }
        }
        ranks_ok &= gram_rank(&gram_matrix(&psi, &basis).unwrap()) == 2;
        worst = worst.max((qubit_trace(&psi, &basis[0]).unwrap() - Complex64::new(2.0, 0.0)).norm());
        for a in &basis[1..] {
            worst = worst.max(qubit_trace(&psi, a).unwrap().norm());
        }
        for x in &basis {
            let rx = rep.rep(x).unwrap();
            hom &= (rep.rep(&x.adjoint().unwrap()).unwrap() - rx.adjoint()).norm() <= ORACLE_TOL;
            for y in &basis {
                let lhs = rep.rep(&x.try_mul(y).unwrap()).unwrap();
                hom &= (lhs - &rx * rep.rep(y).unwrap()).norm() <= ORACLE_TOL;
            }
        }
    }
    let ok = worst <= ORACLE_TOL && ranks_ok && hom;
    (ok, format!("10 states, worst deviation {worst:.2e}, Gram rank 2: {ranks_ok}, *-homomorphism: {hom}"))
}

fn criterion_8() -> (bool, String) {
    let w = Window::new(16).unwrap();
    let mut ok = true;
    let mut n = 0;
    for d in 2..=4 {
        let r = verify_qudit(d, w).unwrap();
        ok &= r.all_pass();
        n += r.entries.len();
        if d == 2 {
            ok &= r.get("d=2 change of basis to qubit subalgebra").is_some_and(|e| e.passed());
        }
    }
    (ok, format!("{n} checks for d = 2, 3, 4"))
}

fn criterion_9() -> (bool, String) {
    let r = verify_optics(32, GATE_TOL).unwrap();
    let sorters = r.entries.iter().filter(|e| e.name.starts_with("sorter")).count();
    let gates = r.entries.iter().filter(|e| e.name.starts_with("gate")).count();
    let worst = r.entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    let ok = r.all_pass() && sorters == 2 && gates == 12 && r.get("optical Weyl relation").is_some();
    (ok, format!("{sorters} sorters, {gates} gates, worst residual {worst:.2e}"))
}

fn criterion_10() -> (bool, String) {
    let g = build_generators();
    let w = Some(Window::new(32).unwrap());
    let v = AlgebraElement::v_pow(1);
    let minus_i = Scalar::i().neg();
    let controls = [
        identity_entry("[a3, V] = 0", &g.a3.commutator(&v).unwrap(), &AlgebraElement::zero(), w).unwrap(),
        identity_entry("V = V*", &v, &v.adjoint().unwrap(), w).unwrap(),
        identity_entry("a1 a2 = -i a3", &g.a1.try_mul(&g.a2).unwrap(), &g.a3.try_scale(&minus_i).unwrap(), w).unwrap(),
        identity_entry("a+ a- = a- a+", &g.a_plus.try_mul(&g.a_minus).unwrap(), &g.a_minus.try_mul(&g.a_plus).unwrap(), w)
            .unwrap(),
    ];
    let caught = controls.iter().filter(|e| !e.passed() && e.symbolic == Some(false) && e.oracle == Some(false)).count();
    (caught == controls.len(), format!("{caught}/{} false identities rejected by both paths", controls.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, Option<Duration>, fn() -> (bool, String)); 10] = [
        ("Pauli relations", Some(Duration::from_secs(1)), criterion_1),
        ("commutant relations", Some(Duration::from_secs(5)), criterion_2),
        ("reconstruction of U and V", None, criterion_3),
        ("factor check", None, criterion_4),
        ("tensor split", None, criterion_5),
        ("iterated extraction", Some(Duration::from_secs(30)), criterion_6),
        ("GNS representation", None, criterion_7),
        ("qudit units", None, criterion_8),
        ("optics", Some(Duration::from_secs(60)), criterion_9),
        ("negative controls", None, criterion_10),
    ];
    let mut failed = Vec::new();
    for (k, (name, limit, f)) in criteria.into_iter().enumerate() {
        let o = run(limit, f);
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} [{tag}] {name}: {} ({:.2?})", k + 1, o.detail, o.elapsed);
        if !o.ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
