use proptest::prelude::*;
use rand::Rng;

use su2gap::geometry::*;
use su2gap::su2::{commutator, haar_pair, haar_sample, Pair, SU2Element, Streams};

fn element() -> impl Strategy<Value = SU2Element> {
    prop::array::uniform4(-1.0f64..1.0)
        .prop_filter("away from 0", |q| q.iter().map(|c| c * c).sum::<f64>() > 1e-3)
        .prop_map(|[w, x, y, z]| {
            let r = (w * w + x * x + y * y + z * z).sqrt();
            SU2Element::from_quaternion(w / r, x / r, y / r, z / r)
        })
}

fn pair() -> impl Strategy<Value = Pair> {
    (element(), element()).prop_map(|(a, b)| Pair::new(a, b))
}

fn square_first(p: &Pair) -> Pair {
    Pair::new(p.a * p.a, p.b)
}

proptest! {
    #[test]
    fn trace_polynomials_match_matrices(p in pair()) {
        let c = pi_map(&p);
        prop_assert!((trace_of_square(c.x) - (p.a * p.a).trace()).abs() < 1e-12);
        let tsq = commutator(&(p.a * p.a), &p.b).trace();
        prop_assert!((commutator_trace_of_square(c.x, c.t) - tsq).abs() < 1e-12);
        let tr = TraceTriple::of_pair(&p);
        prop_assert!((fricke_commutator_trace(tr) - c.t).abs() < 1e-12);
        prop_assert!(tr.markoff_defect() <= 1e-12);
    }

    #[test]
    fn phi_is_compatible_with_squaring(p in pair()) {
        let lhs = phi(pi_map(&p));
        let rhs = pi_map(&square_first(&p));
        prop_assert!((lhs.x - rhs.x).abs() < 1e-12 && (lhs.t - rhs.t).abs() < 1e-12);
        prop_assert!(pi_map(&p).in_domain());
    }

    #[test]
    fn boundary_chebyshev_conjugacy(theta in 0.0f64..std::f64::consts::PI) {
        // the boundary parabola is parametrized by x = 2 cos(theta), and phi doubles theta
        let c = FrickeCoord::new(2.0 * theta.cos(), 4.0 * theta.cos().powi(2) - 2.0);
        let img = phi(c);
        let x2 = 2.0 * (2.0 * theta).cos();
        prop_assert!((img.x - x2).abs() < 1e-12);
        prop_assert!((img.t - (x2 * x2 - 2.0)).abs() < 1e-11);
    }

    #[test]
    fn fricke_construction_inverts_pi(x in -2.0f64..2.0, u in 0.0f64..1.0) {
        let t = (x * x - 2.0) + u * (2.0 - (x * x - 2.0));
        let p = construct_pair_from_fricke(x, t).unwrap();
        let c = pi_map(&p);
        prop_assert!((c.x - x).abs() < 1e-9 && (c.t - t).abs() < 1e-9);
        prop_assert!(p.a.unitarity_defect() < 1e-12 && p.b.unitarity_defect() < 1e-12);
    }

    #[test]
    fn fricke_construction_rejects_outside(x in -2.0f64..2.0, gap in 1e-6f64..1.0) {
        prop_assert!(construct_pair_from_fricke(x, x * x - 2.0 - gap).is_err());
        prop_assert!(construct_pair_from_fricke(x, 2.0 + gap).is_err());
    }
}

#[test]
fn phi_maps_domain_into_itself() {
    let n = 200;
    for i in 0..=n {
        let x = -2.0 + 4.0 * i as f64 / n as f64;
        let lo = x * x - 2.0;
        for j in 0..=n {
            let t = lo + (2.0 - lo) * j as f64 / n as f64;
            let img = phi(FrickeCoord::new(x, t));
            assert!(in_domain_d(img.x, img.t), "({x}, {t}) -> {img:?}");
        }
    }
}

#[test]
fn nonnegativity_decomposition() {
    // x^2 (t - 2) + 2 - ((x^2 - 2)^2 - 2) = x^2 (t - x^2 + 2)
    let mut rng = Streams::new(3).stream(0);
    for _ in 0..10_000 {
        let x: f64 = rng.random_range(-2.0..=2.0);
        let t: f64 = rng.random_range(x * x - 2.0..=2.0);
        let img = phi(FrickeCoord::new(x, t));
        let slack = img.t - (img.x * img.x - 2.0);
        assert!((slack - x * x * (t - x * x + 2.0)).abs() < 1e-12);
        assert!(slack >= -1e-12);
    }
}

#[test]
fn fiber_endpoints_come_from_commuting_and_anticommuting_pairs() {
    for i in 0..=40 {
        let x = -1.95 + 3.9 * i as f64 / 40.0;
        // top of the fiber: b commutes with a
        let p = construct_pair_from_fricke(x, 2.0).unwrap();
        assert!((p.a * p.b).distance(&(p.b * p.a)) < 1e-9);
        // bottom of the fiber: b a b^{-1} = a^{-1}, so [a, b] = a^2;
        // the off-diagonal of b is sqrt(1 - s) with s = 1 up to rounding
        let q = construct_pair_from_fricke(x, x * x - 2.0).unwrap();
        assert!((q.b * q.a * q.b.inverse()).distance(&q.a.inverse()) < 1e-7);
        assert!(q.commutator().distance(&(q.a * q.a)) < 1e-7);
    }
    let (p, q) = (
        construct_pair_from_fricke(2.0, 2.0).unwrap(),
        construct_pair_from_fricke(-2.0, 2.0).unwrap(),
    );
    assert!(p.a.approx_eq(&SU2Element::IDENTITY) && p.b.approx_eq(&SU2Element::IDENTITY));
    assert!(q.a.approx_eq(&SU2Element::IDENTITY.neg()));
}

#[test]
fn traces_of_haar_pairs_reconstruct() {
    let mut rng = Streams::new(4).stream(0);
    for _ in 0..1000 {
        let p = haar_pair(&mut rng);
        let tr = TraceTriple::of_pair(&p);
        assert!(tr.in_omega());
        let q = construct_pair_from_traces(tr.x, tr.y, tr.z).unwrap();
        let back = TraceTriple::of_pair(&q);
        assert!((back.x - tr.x).abs() < 1e-9);
        assert!((back.y - tr.y).abs() < 1e-9);
        assert!((back.z - tr.z).abs() < 1e-9);
        // equal trace triples: the pairs are conjugate, so conjugation-invariant
        // quantities agree
        let k = haar_sample(&mut rng);
        assert!((pi_map(&q.conjugated_by(&k)).t - pi_map(&p).t).abs() < 1e-9);
    }
}

#[test]
fn triples_outside_omega_are_rejected() {
    assert!(construct_pair_from_traces(2.5, 0.0, 0.0).is_err());
    assert!(construct_pair_from_traces(1.0, 1.0, -1.9).is_err());
    assert!(!in_omega(1.0, 1.0, -1.9));
    assert!(in_omega(0.0, 0.0, 0.0));
}
