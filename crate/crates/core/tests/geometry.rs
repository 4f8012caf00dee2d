use cubicgauss::families::{random_cubic_config, random_smooth_form, random_tangency_config, rng_for, DEFAULT_RETRY_CAP};
use cubicgauss::gauss::{alpha_certificate, intersection_multiplicity, mu2_rank4_detailed};
use cubicgauss::jacobian::{polar, quadric_rank, smoothness, JacobianRing};
use cubicgauss::lift::{BaseConditionedSystem, LiftContext};
use cubicgauss::poly::{parse, MonomialBasis};
use cubicgauss::symbolic::generic_rank;
use cubicgauss::threefold::{conic_bundle, triple_points, LineInX};
use cubicgauss::{FieldElement, FieldKind, Polynomial, VarSet};
use proptest::prelude::*;
use rand::Rng;

const P: FieldKind = FieldKind::Prime(cubicgauss::field::DEFAULT_PRIME);

fn plane(s: &str, f: FieldKind) -> Polynomial {
    parse(s, &VarSet::plane(), f).unwrap()
}

fn random_linear_change(f: FieldKind, n: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = rng_for(seed);
    loop {
        let rows: Vec<Vec<FieldElement>> = (0..n).map(|_| (0..n).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let m = cubicgauss::Matrix::from_rows(f, n, rows.clone()).unwrap();
        if m.rank() == n {
            return rows.iter().map(|r| Polynomial::linear_form(f, r)).collect();
        }
    }
}

#[test]
fn fermat_rings() {
    let f = FieldKind::Rational;
    let cubic = parse("x0^3 + x1^3 + x2^3 + x3^3 + x4^3", &VarSet::projective4(), f).unwrap();
    let r = JacobianRing::new(&cubic).unwrap();
    assert_eq!(r.dims(), [1, 5, 10, 10, 5, 1]);
    assert!(r.is_smooth().unwrap() && r.pairings_nonsingular().unwrap());
    let quintic = plane("x^5 + y^5 + z^5", f);
    let r = JacobianRing::new(&quintic).unwrap();
    assert_eq!(r.dims(), [1, 3, 6, 10, 12, 12, 10, 6, 3, 1]);
    // The socle of the Fermat quintic ring is spanned by (xyz)^3.
    assert_eq!(r.quotient_monomials(9).unwrap().len(), 1);
    assert!(!smoothness(&plane("x^5 + y^5", f)).unwrap());
}

#[test]
fn singular_quintic_has_infinite_ring() {
    // A node at [0:0:1]: the Jacobian ideal misses degree N + 1.
    let q = plane("x*y*z^3 + x^5 + y^5", FieldKind::Rational);
    let r = JacobianRing::new(&q).unwrap();
    assert!(!r.is_smooth().unwrap());
    assert!(r.dim(10).unwrap() > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ring_dims_are_coordinate_invariant_and_palindromic(seed in any::<u64>()) {
        let q = random_smooth_form(P, 3, 5, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let r = JacobianRing::new(&q).unwrap();
        let d = r.dims();
        let mut rev = d.clone();
        rev.reverse();
        prop_assert_eq!(&d, &rev);
        let moved = q.substitute(&random_linear_change(P, 3, seed ^ 1)).unwrap();
        prop_assert_eq!(JacobianRing::new(&moved).unwrap().dims(), d);
    }

    #[test]
    fn polar_is_directional_derivative(seed in any::<u64>(), a in prop::collection::vec(-4i64..=4, 3)) {
        let q = random_smooth_form(P, 3, 3, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let pt: Vec<FieldElement> = a.iter().map(|&x| P.from_i64(x)).collect();
        let mut expect = Polynomial::zero(P, 3);
        for (i, c) in pt.iter().enumerate() {
            expect = &expect + &q.partial(i).unwrap().scale(c);
        }
        prop_assert_eq!(polar(&q, &pt).unwrap(), expect);
    }

    #[test]
    fn conic_bundle_identities(seed in any::<u64>()) {
        let inst = random_cubic_config(P, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let b = &inst.bundle;
        // The discriminant is the determinant of the conic-bundle matrix.
        prop_assert_eq!(&b.quintic, &cubicgauss::poly::det3(&b.conic_matrix));
        // F∘ψ = C²·Q on the nose.
        let c2q = &(&b.conic_c * &b.conic_c) * &b.quintic;
        prop_assert_eq!(inst.line.cubic().substitute(&b.psi_cubics).unwrap(), c2q);
        // The conic meets Q in 10 points; D is half of that.
        let t = triple_points(b).unwrap();
        let total: usize = t.cycle.iter().map(|(_, m)| m).sum::<usize>() + t.residual_degree;
        prop_assert_eq!(total, 10);
        prop_assert!(t.cycle.iter().all(|(_, m)| m % 2 == 0));
        prop_assert!(inst.alpha.accepted());
    }

    #[test]
    fn tangency_configs_carry_the_expected_systems(seed in any::<u64>()) {
        let t = random_tangency_config(P, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let cfg = &t.config;
        let deg: usize = cfg.divisor.iter().map(|(_, m)| m).sum();
        prop_assert_eq!(deg, 5);
        for (p, m) in &cfg.divisor {
            let im = intersection_multiplicity(&cfg.conic, &cfg.quintic, p, 12).unwrap();
            prop_assert_eq!(im, Some(2 * m));
        }
        for (d, k, dim) in [(6, 2, 13), (12, 4, 41)] {
            let sys = BaseConditionedSystem::along_divisor(cfg, d, k).unwrap();
            prop_assert_eq!(sys.dim(), dim);
            prop_assert!(sys.has_expected_dim());
        }
        prop_assert!(alpha_certificate(cfg).unwrap().accepted());
    }

    #[test]
    fn mu2_rank4_image_is_divisible_and_in_the_ideal(seed in any::<u64>(), i in 0usize..5) {
        let t = random_tangency_config(P, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let d = mu2_rank4_detailed(&t.config, i).unwrap();
        prop_assert!(!d.element.is_zero());
        let ring = JacobianRing::up_to(&t.config.quintic, 8).unwrap();
        prop_assert!(ring.contains(&d.element.representative).unwrap());
    }
}

#[test]
fn lift_on_general_position_configs() {
    for seed in 0..3u64 {
        let inst = random_cubic_config(P, seed, DEFAULT_RETRY_CAP).unwrap().value;
        let lc = LiftContext::with_cubic(&inst.config, inst.line.cubic()).unwrap();
        assert_eq!((lc.v2m.dim(), lc.v4m.dim(), lc.v4m_minus_q.dim()), (13, 41, 6));
        assert_eq!(lc.codim_image_f(), 5);
        assert_eq!(lc.cubic.as_ref().map(|c| c.1), Some(5));
        assert!(lc.q_times_v4m_minus_q_in_image());
        assert!(lc.h_vanishes_on_image().unwrap());
        assert_eq!(lc.h_kernel_dim().unwrap(), 2);
        assert_eq!(lc.liftable_space().unwrap().codim(), 0);
        let mut rng = rng_for(seed);
        let b8 = MonomialBasis::new(3, 8);
        for _ in 0..5 {
            let v: Vec<FieldElement> = (0..b8.len()).map(|_| P.from_i64(rng.gen_range(-9..=9))).collect();
            let rho = Polynomial::from_vector(P, &b8, &v);
            assert!(lc.verify_h_tau_tilde(&rho).unwrap());
            // τ̃ is independent of the choice of μ on general configurations.
            let (mu, ker) = lc.lift_solutions(&rho).unwrap();
            let c2 = &inst.config.conic * &inst.config.conic;
            let base = &(&c2 * &rho) + &(&mu * &inst.config.quintic);
            for k in ker {
                let other = &base + &(&k * &inst.config.quintic);
                assert_eq!(lc.cokernel_class(&other).unwrap(), lc.cokernel_class(&base).unwrap());
            }
        }
    }
}

#[test]
fn quadric_ranks() {
    let f = FieldKind::Rational;
    let q = parse("x0^2 + x1^2 + x2*x3", &VarSet::projective4(), f).unwrap();
    assert_eq!(quadric_rank(&q).unwrap(), 4);
    let q = parse("(x0 + x1)^2", &VarSet::projective4(), f).unwrap();
    assert_eq!(quadric_rank(&q).unwrap(), 1);
}

#[test]
fn intersection_multiplicity_against_restriction() {
    // Along the line y = 0 the quintic restricts to x^2 (x - z)^3, so the multiplicities at
    // [0:0:1] and [1:0:1] are 2 and 3 whenever the line is not tangent elsewhere.
    let f = FieldKind::Rational;
    let q = plane("x^2*(x - z)^3 + y*z^4 + y^5", f);
    let line = plane("y", f);
    assert_eq!(intersection_multiplicity(&line, &q, &[f.zero(), f.zero(), f.one()], 10).unwrap(), Some(2));
    assert_eq!(intersection_multiplicity(&line, &q, &[f.one(), f.zero(), f.one()], 10).unwrap(), Some(3));
    assert!(intersection_multiplicity(&line, &q, &[f.one(), f.zero(), f.zero()], 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// The rank over the fraction field bounds every specialization and is attained at random points.
    #[test]
    fn generic_rank_dominates_specializations(entries in prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 12), pts in prop::collection::vec((-50i64..=50, -50i64..=50), 4)) {
        let f = FieldKind::Rational;
        let vars = VarSet::new(&["s", "t"]).unwrap();
        let s = parse("s", &vars, f).unwrap();
        let t = parse("t", &vars, f).unwrap();
        let m: Vec<Vec<Polynomial>> = entries
            .chunks(4)
            .map(|row| row.iter().map(|&(a, b, c)| &(&s.scale(&f.from_i64(a)) + &t.scale(&f.from_i64(b))) + &Polynomial::constant(f, 2, f.from_i64(c))).collect())
            .collect();
        let g = generic_rank(m.clone()).unwrap();
        let mut best = 0;
        for (a, b) in pts {
            let pt = [f.from_i64(a), f.from_i64(b)];
            let rows: Vec<Vec<FieldElement>> = m.iter().map(|r| r.iter().map(|e| e.evaluate(&pt).unwrap()).collect()).collect();
            let r = cubicgauss::Matrix::from_rows(f, 4, rows).unwrap().rank();
            prop_assert!(r <= g);
            best = best.max(r);
        }
        // Schwartz–Zippel: a nonzero minor of degree ≤ 3 vanishes at a random grid point with
        // probability ≤ 3/101, so all four points miss it with probability below 1e-6.
        prop_assert_eq!(best, g);
    }
}

#[test]
fn special_lines() {
    let inst = random_cubic_config(P, 5, DEFAULT_RETRY_CAP).unwrap().value;
    assert!(cubicgauss::threefold::special_line_test(&inst.bundle).unwrap());
    // A line inside a plane of the Fermat cubic, moved to x1 = x2 = x4 = 0.
    let f = FieldKind::Rational;
    let cubic = parse("x0^3 + (x1 - x0)^3 + x3^3 + (x2 - x3)^3 + x4^3", &VarSet::projective4(), f).unwrap();
    let b = conic_bundle(&LineInX::coordinate_line(&cubic).unwrap()).unwrap();
    assert!(!cubicgauss::threefold::special_line_test(&b).unwrap());
    assert_eq!(b.quintic, plane("9/4*x^4*y + 9/4*x*y^4 + 9*x*y*z^3", f));
}
