//! Property tests over seeded random diagrams and premorphisms.

mod common;

use bratteli::dsl::{self, Decl, DiagramDecl, SourceDocument, Span};
use bratteli::fd_algebra::{h_of, recover_multiplicity, StarHom};
use bratteli::iso::{morphisms_from_certificate, search_intertwining, verify_certificate, IsoVerdict};
use bratteli::k0::{push, K0Class};
use bratteli::morphism::{
    compose, equivalent_def210, equivalent_def29, identity_premorphism, verify_non_equivalence, verify_witness,
    EquivalenceVerdict,
};
use bratteli::{LevelVector, Matrix, MultiplicityMatrix};
use common::{inflation, random_diagram, random_embedding, scaled, uhf, vec_of};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tail_repeats_edges_and_scales_levels(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed));
        let q = d.period().unwrap();
        let lambda = d.growth().unwrap().clone();
        for n in d.periodic_from().unwrap()..d.periodic_from().unwrap() + 2 * q {
            prop_assert_eq!(d.edge_matrix(n + q).unwrap(), d.edge_matrix(n).unwrap());
            let scaled: Vec<BigUint> = d.level(n).unwrap().entries().iter().map(|x| x * &lambda).collect();
            prop_assert_eq!(d.level(n + q).unwrap().entries().to_vec(), scaled);
        }
    }

    #[test]
    fn telescopes_compose(seed in any::<u64>(), n in 1usize..5, a in 0usize..4, b in 0usize..4) {
        let d = random_diagram(&mut rng(seed));
        let (m, k) = (n + a, n + a + b);
        let direct = d.telescope_matrix(n, k).unwrap();
        let split = d.telescope_matrix(m, k).unwrap().mul(&d.telescope_matrix(n, m).unwrap());
        prop_assert_eq!(direct, split);
        prop_assert_eq!(d.telescope_matrix(n, n).unwrap(), Matrix::identity(d.width(n).unwrap()));
    }

    #[test]
    fn identities_are_neutral_for_composition(seed in any::<u64>(), k in 1u64..4, shift in 0usize..3) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r);
        let t = scaled(&d, k);
        let f = inflation(&d, &t, r.gen_range(1..=k), shift);
        let left = compose(&identity_premorphism(&t, 1).unwrap(), &f).unwrap();
        let right = compose(&f, &identity_premorphism(&d, 1).unwrap()).unwrap();
        for h in [left, right] {
            match equivalent_def29(&h, &f, 40).unwrap() {
                EquivalenceVerdict::Equivalent { witness } => prop_assert!(verify_witness(&h, &f, &witness).unwrap()),
                other => prop_assert!(false, "{:?}", other),
            }
        }
    }

    #[test]
    fn equivalence_certificates_check_out(seed in any::<u64>(), k in 2u64..4) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r);
        let t = scaled(&d, k);
        let (a, b) = (r.gen_range(1..=k), r.gen_range(1..=k));
        let (f, g) = (inflation(&d, &t, a, 0), inflation(&d, &t, b, 1));
        let verdicts = [equivalent_def29(&f, &g, 40).unwrap(), equivalent_def210(&f, &g, 40).unwrap()];
        for v in &verdicts {
            match v {
                EquivalenceVerdict::Equivalent { witness } => {
                    prop_assert_eq!(a, b);
                    prop_assert!(verify_witness(&f, &g, witness).unwrap());
                }
                EquivalenceVerdict::NotEquivalent { certificate } => {
                    prop_assert_ne!(a, b);
                    prop_assert!(verify_non_equivalence(&f, &g, certificate).unwrap());
                }
                EquivalenceVerdict::UnknownAtBound => prop_assert!(false, "undecided for a = {}, b = {}", a, b),
            }
        }
    }

    #[test]
    fn uhf_certificates_verify_and_tampering_is_caught(base in prop::sample::select(vec![2u64, 3, 6]), i in 1u32..3, j in 1u32..3) {
        let (b, c) = (uhf(1, &[], base.pow(i)), uhf(1, &[base], base.pow(j)));
        let IsoVerdict::Found { certificate } = search_intertwining(&b, &c, 12).unwrap() else {
            return Err(TestCaseError::fail("no certificate between UHF diagrams with equal invariants"));
        };
        prop_assert!(verify_certificate(&certificate, &b, &c).unwrap());
        prop_assert!(morphisms_from_certificate(&certificate, &b, &c).is_ok());
        let mut bad = certificate.clone();
        let x = bad.big_r[0].get(0, 0) + BigUint::from(1u32);
        bad.big_r[0].set(0, 0, x);
        prop_assert!(!verify_certificate(&bad, &b, &c).unwrap_or(false));
    }

    #[test]
    fn emitted_documents_parse_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let decls = (0..r.gen_range(1..4))
            .map(|i| Decl::Diagram(DiagramDecl {
                name: format!("D{i}"),
                presentation: random_diagram(&mut r).presentation().clone(),
                span: Span::default(),
            }))
            .collect();
        let doc = SourceDocument { decls };
        let text = dsl::emit(&doc);
        prop_assert_eq!(&dsl::parse(&text).unwrap(), &doc);
        prop_assert!(dsl::resolve(&doc).is_ok());
    }

    #[test]
    fn block_maps_recover_their_multiplicity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (rows, cols) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let v: Vec<u64> = (0..cols).map(|_| r.gen_range(1..=3)).collect();
        let e = random_embedding(&mut r, rows, cols, 2);
        let w: Vec<BigUint> = e.mul_vec(&vec_of(&v)).into_iter().map(|x| (x + BigUint::from(r.gen_range(0..=1u32))).max(BigUint::from(1u32))).collect();
        let m = MultiplicityMatrix::new(e.clone(), LevelVector::small(&v), LevelVector::new(w).unwrap()).unwrap();
        let phi = StarHom::from_block_map(&h_of(&m).unwrap());
        prop_assert_eq!(recover_multiplicity(&phi), e);
    }

    #[test]
    fn pushing_is_transitive(seed in any::<u64>(), a in 0usize..3, b in 0usize..3) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r);
        let c = K0Class::new(1, (0..d.width(1).unwrap()).map(|_| BigInt::from(r.gen_range(-3..=3))).collect());
        let mid = push(&d, &c, 1 + a).unwrap();
        prop_assert_eq!(push(&d, &mid, 1 + a + b).unwrap(), push(&d, &c, 1 + a + b).unwrap());
    }
}
