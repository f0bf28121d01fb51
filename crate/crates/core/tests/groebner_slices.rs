use gorsum_core::random::{random_homogeneous_relations, rng};
use gorsum_core::*;
use proptest::prelude::*;

/// `dim (k[x,y]/I)_d` from the span of `m * g` with `deg m + deg g = d`.
fn slice_dim(ring: &PolyRing<PrimeField>, gens: &[Poly<PrimeField>], d: u32) -> usize {
    let basis = ring.monomials_of_degree(d);
    let f = ring.field();
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.degree().unwrap();
        if dg > d {
            continue;
        }
        for m in ring.monomials_of_degree(d - dg) {
            let p = ring.mul_term(&f.one(), &m, g);
            rows.push(basis.iter().map(|b| p.coefficient(b).cloned().unwrap_or_else(|| f.zero())).collect::<Vec<_>>());
        }
    }
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(f, basis.len(), &rows).rank() };
    basis.len() - rank
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn quotient_dimensions_match_slices(seed in any::<u64>(), nvars in 1usize..=3, top in 2u32..=4) {
        let f = PrimeField::new(101).unwrap();
        let names = [("x", 1), ("y", 1), ("z", 1)];
        let ring = PolyRing::new(&f, &names[..nvars]).unwrap();
        let rels = random_homogeneous_relations(&mut rng(seed), nvars, top);
        let gens: Vec<_> = rels.iter().map(|r| ring.parse(r).unwrap()).collect();
        let gb = GroebnerBasis::compute(&ring, &gens);
        prop_assert!(gb.satisfies_criterion());
        let std = gb.standard_monomials().unwrap();
        for d in 0..=top {
            let count = std.iter().filter(|m| m.degree() == d).count();
            prop_assert_eq!(count, slice_dim(&ring, &gens, d));
        }
        prop_assert!(std.iter().all(|m| m.degree() < top));
    }
}
