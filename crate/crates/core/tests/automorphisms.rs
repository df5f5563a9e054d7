use m3decomp::automorphisms::{
    apply_map_poly, phi_map, phi_symbolic, preserves, psi_map, psi_symbolic, transpose_map,
};
use m3decomp::exact::{parse_poly, ConstraintSet, Field, MultiPoly, RatFunc, Rational, Ring};
use m3decomp::matrix::{Mat3, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly_span(units: &[(usize, usize)]) -> Subspace<MultiPoly> {
    Subspace::span(
        units.iter().map(|&(i, j)| Mat3::unit(i, j)).collect(),
        ConstraintSet::new(),
    )
    .unwrap()
}

fn rf(s: &str) -> RatFunc {
    RatFunc::from_poly(parse_poly(s).unwrap())
}

fn rf_mat(rows: [[&str; 3]; 3]) -> Mat3<RatFunc> {
    Mat3::from_rows(rows.map(|r| r.map(rf)))
}

#[test]
fn symbolic_phi_is_an_automorphism_preserving_m7() {
    let phi = phi_symbolic();
    assert_eq!(phi.check(), Ok(()));
    let m7 = poly_span(&[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]);
    assert!(preserves(&phi, &m7).unwrap());
    let m7t = m7.transpose().unwrap();
    assert!(!preserves(&phi, &m7t).unwrap());
}

#[test]
fn symbolic_psi_is_an_automorphism_preserving_upper_triangular() {
    let psi = psi_symbolic();
    assert_eq!(psi.check(), Ok(()));
    let u6 = poly_span(&[(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]);
    assert!(preserves(&psi, &u6).unwrap());
    let img = apply_map_poly(&psi, &u6).unwrap();
    assert!(img.generators().iter().all(|g| u6.contains(g)));
}

#[test]
fn psi_is_phi_with_mu_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 20 {
        let v: Vec<Rational> = (0..5)
            .map(|_| Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4)))
            .collect();
        let (a, b, g, d, e) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
        if a.is_zero() || d.is_zero() {
            continue;
        }
        let psi = psi_map(a, b, g, d, e).unwrap();
        let phi = phi_map(b, g, d, e, &Rational::zero(), a).unwrap();
        assert_eq!(psi.matrix9(), phi.matrix9());
        done += 1;
    }
}

#[test]
fn random_phi_compositions_stay_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut draw = || -> Rational { Rational::from_int(rng.gen_range(-4i64..=4)) };
    let mut maps = Vec::new();
    while maps.len() < 6 {
        let p: Vec<Rational> = (0..6).map(|_| draw()).collect();
        if let Ok(m) = phi_map(&p[0], &p[1], &p[2], &p[3], &p[4], &p[5]) {
            maps.push(m);
        }
    }
    for w in maps.windows(2) {
        let c = w[0].compose(&w[1]);
        assert!(c.is_algebra_map());
        let anti = c.compose(&transpose_map());
        assert!(anti.is_algebra_map());
    }
}

/// Both generators of the rank-two pattern with a zero first row, rescaled
/// by κ and ν after φ with β = γ = λ = μ = 0, match the displayed matrices.
#[test]
fn rescaled_images_for_the_plane_pattern() {
    let z = RatFunc::zero();
    let (k, n) = (RatFunc::var("kappa"), RatFunc::var("nu"));
    let phi = phi_map(&z, &z, &k, &z, &z, &n).unwrap();
    let v1 = rf_mat([["0", "0", "0"], ["1", "d", "e"], ["0", "f", "g"]]);
    let v2 = rf_mat([["0", "0", "0"], ["0", "s", "t"], ["1", "x", "y"]]);
    let got1 = phi.image(&v1).scale(&k);
    let got2 = phi.image(&v2).scale(&n);
    let kk = k.mul(&k);
    let want1 = Mat3::from_rows([
        [z.clone(), z.clone(), z.clone()],
        [RatFunc::one(), k.mul(&rf("d")), n.mul(&rf("e"))],
        [
            z.clone(),
            kk.mul(&rf("f")).div(&n).unwrap(),
            k.mul(&rf("g")),
        ],
    ]);
    let want2 = Mat3::from_rows([
        [z.clone(), z.clone(), z.clone()],
        [
            z.clone(),
            n.mul(&rf("s")),
            rf("t").mul(&n).mul(&n).div(&k).unwrap(),
        ],
        [RatFunc::one(), k.mul(&rf("x")), n.mul(&rf("y"))],
    ]);
    assert_eq!(got1, want1);
    assert_eq!(got2, want2);
}

/// Same identity for the unital plane pattern with entries in the first row.
#[test]
fn rescaled_images_for_the_unital_pattern() {
    let z = RatFunc::zero();
    let (k, n) = (RatFunc::var("kappa"), RatFunc::var("nu"));
    let phi = phi_map(&z, &z, &k, &z, &z, &n).unwrap();
    let v1 = rf_mat([["0", "a", "b"], ["1", "c", "d"], ["0", "e", "f"]]);
    let v2 = rf_mat([["0", "r", "s"], ["0", "t", "u"], ["1", "x", "y"]]);
    let kk = k.mul(&k);
    let want1 = Mat3::from_rows([
        [z.clone(), kk.mul(&rf("a")), k.mul(&n).mul(&rf("b"))],
        [RatFunc::one(), k.mul(&rf("c")), n.mul(&rf("d"))],
        [
            z.clone(),
            kk.mul(&rf("e")).div(&n).unwrap(),
            k.mul(&rf("f")),
        ],
    ]);
    let nn = n.mul(&n);
    let want2 = Mat3::from_rows([
        [z.clone(), k.mul(&n).mul(&rf("r")), nn.mul(&rf("s"))],
        [
            z.clone(),
            n.mul(&rf("t")),
            nn.mul(&rf("u")).div(&k).unwrap(),
        ],
        [RatFunc::one(), k.mul(&rf("x")), n.mul(&rf("y"))],
    ]);
    assert_eq!(phi.image(&v1).scale(&k), want1);
    assert_eq!(phi.image(&v2).scale(&n), want2);
}
