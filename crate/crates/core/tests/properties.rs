use rand::Rng;

use cdala::matlie::{classify, triangular_project, Part, Scheme};
use cdala::sample;
use cdala::smash::{matrix_to_smash, morita_to_matrix};
use cdala::structure::graded_iso_check;
use cdala::weyl::{
    coinvariant_character, schur_weyl_dim, weyl_lower_bound, BoundKind, Character, CoinvGroup,
};
use cdala::{CycScalar, MatElem, Ring, RingVariant, SmashElem};

#[test]
fn cyclotomic_field_axioms() {
    let mut rng = sample::rng(1);
    for d in 1..=6u32 {
        for _ in 0..60 {
            let (a, b, c) = (sample::scalar(&mut rng, d), sample::scalar(&mut rng, d), sample::scalar(&mut rng, d));
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if !b.is_zero() {
                assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
            }
        }
        // 1 + z + ... + z^{d-1} = 0 for d > 1
        let s = (0..d as i64).fold(CycScalar::zero(d), |acc, k| &acc + &CycScalar::zeta_pow(d, k));
        assert_eq!(s.is_zero(), d > 1);
    }
}

#[test]
fn smash_ring_associative_and_morita_multiplicative() {
    let mut rng = sample::rng(2);
    for v in [RingVariant::A, RingVariant::B, RingVariant::C, RingVariant::LoopA] {
        for d in 1..=3u32 {
            for _ in 0..25 {
                let mut g = || sample::smash(&mut rng, v, d, 2, 3);
                let (x, y, z) = (g(), g(), g());
                assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
                let (mx, my) = (morita_to_matrix(&x).unwrap(), morita_to_matrix(&y).unwrap());
                assert_eq!(morita_to_matrix(&x.mul(&y)).unwrap(), mx.try_mul(&my).unwrap());
                assert_eq!(matrix_to_smash(&mx, v, d).unwrap(), x);
            }
        }
    }
}

fn parts_ok(scheme: Scheme, m: &MatElem<SmashElem>, want: Part) -> bool {
    m.iter().all(|(i, j, r)| r.terms().keys().all(|mono| classify(scheme, i, j, mono.a, mono.b) == want))
}

#[test]
fn triangular_parts_are_subalgebras() {
    let mut rng = sample::rng(3);
    for (scheme, v) in [
        (Scheme::Td1, RingVariant::A),
        (Scheme::Td2, RingVariant::A),
        (Scheme::Td2, RingVariant::B),
        (Scheme::Td3, RingVariant::A),
        (Scheme::Td3C, RingVariant::C),
    ] {
        for _ in 0..30 {
            let n = rng.gen_range(2..=3);
            let d = rng.gen_range(1..=3);
            let x = sample::sl_matrix(&mut rng, n, v, d, 2, 5);
            let y = sample::sl_matrix(&mut rng, n, v, d, 2, 5);
            let (xn, xm, xp) = triangular_project(&x, scheme).unwrap();
            let (yn, _, yp) = triangular_project(&y, scheme).unwrap();
            assert_eq!(xn.try_add(&xm).unwrap().try_add(&xp).unwrap(), x);
            assert!(parts_ok(scheme, &xn, Part::Neg) && parts_ok(scheme, &xm, Part::Mid) && parts_ok(scheme, &xp, Part::Pos));
            assert!(parts_ok(scheme, &xn.bracket(&yn).unwrap(), Part::Neg), "{:?}", scheme);
            assert!(parts_ok(scheme, &xp.bracket(&yp).unwrap(), Part::Pos), "{:?}", scheme);
        }
    }
    let c = sample::sl_matrix(&mut rng, 2, RingVariant::C, 2, 2, 3);
    assert!(triangular_project(&c, Scheme::Td2).is_err());
}

#[test]
fn graded_isomorphism_scaling() {
    for (n, d) in [(2, 1), (2, 2), (3, 2), (2, 3)] {
        let r = graded_iso_check(n, d, 2).unwrap();
        assert!(r.ok(), "n={} d={}: {:?}", n, d, r.mismatches);
        assert_eq!((r.mu, r.kappa), (-(n as i64), -((n as i64) * d as i64)));
    }
}

#[test]
fn wreath_quotient_meets_smash_bound() {
    // (2l+1)^l at d = 2 with character F(l, 2l+1) (x) sign
    let (pq, ch) = coinvariant_character(2, 2, 10, CoinvGroup::Wreath, 1_000_000).unwrap();
    assert_eq!(pq.dimension(), Ok(25));
    for n in 1..=4 {
        let sw = schur_weyl_dim(n, 2, &Character::Table(ch.clone()));
        assert_eq!(sw, weyl_lower_bound(n, 2, 2, BoundKind::Smash).bound);
        assert_eq!(sw, schur_weyl_dim(n, 2, &Character::cf_sign(5)));
    }
}
