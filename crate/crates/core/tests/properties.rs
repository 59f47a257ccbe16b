use carlitz_core::det::{build_matrix, det_lambda, det_minus, DetEngine, FqStarChar};
use carlitz_core::lfun::{CharFilter, CharacterGroup};
use carlitz_core::splitting::split_all;
use carlitz_core::units::inverse_mod;
use carlitz_core::*;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// (p, n) pairs small enough to sweep quickly.
const FIELDS: &[(u64, u32)] = &[(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2)];

fn field(i: usize) -> FieldCtx {
    let (p, n) = FIELDS[i % FIELDS.len()];
    FieldCtx::new(p, n, None).unwrap()
}

/// A monic polynomial of the given degree picked by `seed`.
fn monic(f: &FieldCtx, deg: usize, seed: u64) -> FqPoly {
    let mut codes: Vec<u32> = (0..deg)
        .map(|i| ((seed >> (5 * i)) % f.q() as u64) as u32)
        .collect();
    codes.push(1);
    FqPoly::from_codes(f, &codes).unwrap()
}

fn codes_poly(f: &FieldCtx, raw: &[u32]) -> FqPoly {
    let codes: Vec<u32> = raw.iter().map(|c| c % f.q() as u32).collect();
    FqPoly::from_codes(f, &codes).unwrap()
}

fn big(x: i64, scale: &BigInt) -> BigInt {
    BigInt::from(x) * scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_log(fi in 0usize..7, code in 1u32..1000) {
        let f = field(fi);
        let a = f.elem(code % (f.q() as u32 - 1) + 1).unwrap();
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
        prop_assert_eq!(f.exp(f.log(a).unwrap() as i64), a);
    }

    #[test]
    fn divrem_and_gcd(
        fi in 0usize..7,
        ca in proptest::collection::vec(any::<u32>(), 0..8),
        cb in proptest::collection::vec(any::<u32>(), 0..5),
    ) {
        let f = field(fi);
        let a = codes_poly(&f, &ca);
        let b = codes_poly(&f, &cb);
        prop_assume!(!b.is_zero());
        let (quo, rem) = f.poly_divrem(&a, &b).unwrap();
        prop_assert_eq!(f.poly_add(&f.poly_mul(&quo, &b), &rem), a.clone());
        prop_assert!(rem.degree() < b.degree() || rem.is_zero());
        let g = f.poly_gcd(&a, &b);
        prop_assert!(g.is_monic());
        prop_assert!(f.poly_rem(&a, &g).unwrap().is_zero());
        prop_assert!(f.poly_rem(&b, &g).unwrap().is_zero());
    }

    #[test]
    fn factorization_remultiplies(fi in 0usize..7, deg in 1usize..6, seed in any::<u64>()) {
        let f = field(fi);
        let m = monic(&f, deg, seed);
        let factors = f.factorize(&m).unwrap();
        let back = factors
            .iter()
            .fold(FqPoly::one(), |acc, (p, e)| f.poly_mul(&acc, &f.poly_pow(p, *e)));
        prop_assert_eq!(back, m);
        for (p, _) in &factors {
            prop_assert!(f.is_irreducible(p));
        }
    }

    #[test]
    fn unit_inverses(fi in 0usize..7, deg in 1usize..4, seed in any::<u64>()) {
        let f = field(fi);
        let m = monic(&f, deg, seed);
        let sys = UnitSystem::new(&f, &m).unwrap();
        prop_assert_eq!(sys.len() as u64 * (f.q() - 1), f.phi(&m).unwrap());
        for a in sys.reps() {
            let inv = inverse_mod(&f, a, &m).unwrap();
            prop_assert!(f.poly_mulmod(a, &inv, &m).unwrap().is_one());
        }
    }

    #[test]
    fn large_coefficients_cross_machine_range(
        n in prop::sample::select(vec![3u64, 4, 5, 12]),
        a in proptest::collection::vec(-9i64..9, 1..12),
        b in proptest::collection::vec(-9i64..9, 1..8),
        e in 15u32..40,
    ) {
        let cyc = CycCtx::new(n);
        let scale = BigInt::from(10).pow(e);
        let to_poly = |v: &[i64], s: &BigInt| {
            CycPoly::new(v.chunks(2).map(|c| cyc.from_coords(&c.iter().map(|&x| big(x, s)).collect::<Vec<_>>())).collect())
        };
        let (pa, pb) = (to_poly(&a, &BigInt::one()), to_poly(&b, &BigInt::one()));
        let (sa, sb) = (to_poly(&a, &scale), to_poly(&b, &scale));
        // (s a)(s b) = s^2 (a b), coefficientwise in Z[ζ_n]
        let lhs = cyc.poly_mul(&sa, &sb);
        let ab = cyc.poly_mul(&pa, &pb);
        let s2 = &scale * &scale;
        let rhs = CycPoly::new(ab.coeffs().iter().map(|c| cyc.scale(c, &s2)).collect());
        prop_assert_eq!(&lhs, &rhs);
        // division by a divisor with constant term 1
        let mut unit_low = b.clone();
        unit_low[0] = 1;
        if unit_low.len() > 1 { unit_low[1] = 0; }
        let d = to_poly(&unit_low, &BigInt::one());
        let prod = cyc.poly_mul(&sa, &d);
        prop_assert_eq!(cyc.poly_exact_div(&prod, &d).unwrap(), sa);
    }

    #[test]
    fn det_minus_is_canonical(fi in 1usize..7, deg in 2usize..4, seed in any::<u64>(), shuffle in any::<u64>()) {
        let f = field(fi);
        prop_assume!(f.q() <= 5 || deg == 2);
        let m = monic(&f, deg, seed);
        let sys = UnitSystem::new(&f, &m).unwrap();
        let det = det_minus(&f, &sys, DetEngine::Bareiss).unwrap();
        prop_assert_eq!(det.coeff(0), BigInt::one());
        prop_assert!(det.coeff(1).is_zero());
        let bound = sys.len() * (deg - 1) * (f.q() as usize - 2);
        prop_assert!(det.degree().unwrap_or(0) <= bound);
        // rotate the representatives and switch to the last generator
        let mut reps = sys.reps().to_vec();
        let k = (shuffle as usize) % reps.len();
        reps.rotate_left(k);
        reps.reverse();
        let g = *f.generators().last().unwrap();
        let other = f.with_generator(g).unwrap();
        let sys2 = UnitSystem::with_order(&other, &m, reps).unwrap();
        prop_assert_eq!(det_minus(&other, &sys2, DetEngine::Bareiss).unwrap(), det);
    }

    #[test]
    fn per_lambda_oracle(fi in 1usize..7, deg in 1usize..4, seed in any::<u64>()) {
        let f = field(fi);
        prop_assume!(f.q() <= 5 || deg <= 2);
        let m = monic(&f, deg, seed);
        let sys = UnitSystem::new(&f, &m).unwrap();
        let cyc = CycCtx::new(f.q() - 1);
        let group = CharacterGroup::new(&f, &m, DEFAULT_GROUP_LIMIT).unwrap();
        for lam in FqStarChar::nontrivial(&f) {
            let matrix = build_matrix(&f, &sys, lam, &cyc).unwrap();
            prop_assert!(matrix.degree_bound() <= sys.len() * (deg - 1));
            let engine = det_lambda(&f, &sys, lam, &cyc, DetEngine::Bareiss).unwrap();
            prop_assert_eq!(group.det_lambda(lam, &cyc).unwrap(), engine);
        }
    }

    #[test]
    fn characters_are_orthogonal_and_conductors_divide(fi in 1usize..7, deg in 1usize..4, seed in any::<u64>()) {
        let f = field(fi);
        prop_assume!(f.q() <= 5 || deg <= 2);
        let m = monic(&f, deg, seed);
        let group = CharacterGroup::new(&f, &m, DEFAULT_GROUP_LIMIT).unwrap();
        let all = group.characters(CharFilter::All);
        prop_assert_eq!(all.len() as u64, f.phi(&m).unwrap());
        let minus = group.characters(CharFilter::MinusPart);
        prop_assert_eq!(minus.len() as u64, f.phi(&m).unwrap() / (f.q() - 1) * (f.q() - 2));
        for chi in &all {
            let cond = group.conductor(chi);
            prop_assert!(f.poly_rem(&m, &cond).unwrap().is_zero());
            if !chi.is_trivial() {
                // l_poly asserts the vanishing sum in degree deg f_χ
                let l = group.l_poly(chi).unwrap();
                prop_assert!(l.value.degree().unwrap_or(0) < cond.degree().unwrap());
            }
        }
    }

    #[test]
    fn relative_zeta_identities(fi in 0usize..7, deg in 1usize..4, seed in any::<u64>()) {
        let f = field(fi);
        prop_assume!(f.q() <= 5 || deg <= 2);
        let m = monic(&f, deg, seed);
        let r = relative_zeta(&f, &m, Options { with_oracle: true, ..Options::default() }).unwrap();
        prop_assert_eq!(r.p_minus.mul(&r.j_poly), r.det_poly.clone());
        prop_assert!(r.h_minus >= BigInt::one());
        prop_assert_eq!(r.det_poly.eval(&BigInt::one()), &r.w_minus * &r.h_minus);
        prop_assert!(r.checks_passed());
        for s in split_all(&f, &m).unwrap() {
            prop_assert_eq!(s.e * s.f * s.g, r.phi);
        }
        if f.q() == 2 || deg == 1 {
            prop_assert_eq!(r.p_minus, IntPoly::one());
        }
        if r.split.len() == 1 {
            prop_assert_eq!(r.j_poly, IntPoly::one());
        }
    }
}

#[test]
fn maillet_value_is_never_negative_for_small_fields() {
    for (p, n) in [(3u64, 1u32), (5, 1)] {
        let f = FieldCtx::new(p, n, None).unwrap();
        for d in 1..=2 {
            for m in enumerate_monic(&f, d) {
                let (value, holds) = maillet_determinant(&f, &m).unwrap();
                assert!(holds, "m = {m}");
                assert!(value >= BigInt::zero());
            }
        }
    }
}
