use bentforge::anf::AnfPoly;
use bentforge::construct::{concat4, mm_bent, ConcatQuadruple};
use bentforge::format::{
    parse_field, parse_subspace, parse_tt, parse_vf, subspace_to_string, tt_to_string,
    vf_to_anf_lines, vf_to_string,
};
use bentforge::gf2::{enumerate_subspaces, gaussian_binomial, span};
use bentforge::gf2m::Field;
use bentforge::msub::is_msubspace;
use bentforge::psclass::{is_partial_spread, ps_ap, Subclass};
use bentforge::{BooleanFunction, VectorialFunction};
use proptest::prelude::*;

fn function(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BooleanFunction> {
    n.prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), 1 << n)
            .prop_map(move |bits| BooleanFunction::from_fn(n, |x| bits[x as usize]).unwrap())
    })
}

fn permutation(m: usize) -> impl Strategy<Value = VectorialFunction> {
    Just((0..1u32 << m).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(move |t| VectorialFunction::new(m, t).unwrap())
}

fn vectors(n: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..1u32 << n, 0..=n)
}

proptest! {
    #[test]
    fn tt_text_round_trips(f in function(1..=9)) {
        prop_assert_eq!(parse_tt(&tt_to_string(&f)).unwrap(), f);
    }

    #[test]
    fn anf_text_round_trips(f in function(1..=7)) {
        let anf = f.to_anf();
        let back = AnfPoly::parse(&anf.to_string(), Some(f.n())).unwrap();
        prop_assert_eq!(BooleanFunction::from_anf(&back).unwrap(), f);
    }

    #[test]
    fn vf_text_round_trips(p in (1usize..=5).prop_flat_map(permutation)) {
        prop_assert_eq!(&parse_vf(&vf_to_string(&p)).unwrap(), &p);
        prop_assert_eq!(&parse_vf(&vf_to_anf_lines(&p)).unwrap(), &p);
        prop_assert_eq!(&p.compose(&p.inverse().unwrap()).unwrap(), &VectorialFunction::identity(p.m()).unwrap());
    }

    #[test]
    fn subspace_text_round_trips(v in vectors(7)) {
        let s = span(&v, 7).unwrap();
        prop_assume!(s.dim() > 0);
        prop_assert_eq!(parse_subspace(&subspace_to_string(&s), Some(7)).unwrap(), s);
    }

    #[test]
    fn grassmann_and_duality(u in vectors(6), w in vectors(6)) {
        let (a, b) = (span(&u, 6).unwrap(), span(&w, 6).unwrap());
        let sum = a.sum(&b).unwrap();
        let meet = a.intersect(&b).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), a.dim() + b.dim());
        prop_assert!(meet.is_subspace_of(&a) && a.is_subspace_of(&sum));
        let perp = a.orthogonal_complement();
        prop_assert_eq!(perp.dim() + a.dim(), 6);
        prop_assert_eq!(perp.orthogonal_complement(), a.clone());
        prop_assert_eq!(a.elements().count(), 1 << a.dim());
    }

    #[test]
    fn field_arithmetic(m in 2usize..=10, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let k = Field::new(m).unwrap();
        let mask = k.size() - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(k.mul(a, k.mul(b, c)), k.mul(k.mul(a, b), c));
        prop_assert_eq!(k.mul(a, b ^ c), k.mul(a, b) ^ k.mul(a, c));
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(k.trace(a ^ b), k.trace(a) ^ k.trace(b));
        prop_assert_eq!(parse_field(&k.spec_string()).unwrap().modulus(), k.modulus());
    }

    #[test]
    fn mm_functions_are_bent_with_canonical_msubspace(
        (p, h) in (1usize..=4).prop_flat_map(|m| (permutation(m), function(m..=m)))
    ) {
        let m = p.m();
        let f = mm_bent(&p, &h).unwrap();
        prop_assert!(f.is_bent());
        let canonical = span(&(0..m).map(|i| 1u32 << i).collect::<Vec<_>>(), 2 * m).unwrap();
        prop_assert!(is_msubspace(&f, &canonical).unwrap());
    }

    #[test]
    fn concatenation_splits_back(f in function(3..=8)) {
        let q = ConcatQuadruple::split(&f).unwrap();
        prop_assert_eq!(concat4(&q).unwrap(), f);
    }

    #[test]
    fn ps_ap_is_partial_spread(bits in proptest::collection::vec(any::<bool>(), 7)) {
        // balanced h on F_8 with h(0) = 0: choose 4 of the 7 nonzero points
        let mut order: Vec<u32> = (1..8).collect();
        order.sort_by_key(|&x| (bits[x as usize - 1], x));
        let ones = &order[..4];
        let h = BooleanFunction::from_fn(3, |x| ones.contains(&x)).unwrap();
        let f = ps_ap(3, &h).unwrap();
        prop_assert!(f.is_bent());
        let w = is_partial_spread(&f).unwrap().unwrap();
        prop_assert_eq!(w.subclass, Subclass::PsMinus);
        prop_assert!(w.certifies(&f));
        let g = !f.clone();
        let wc = is_partial_spread(&g).unwrap().unwrap();
        prop_assert_eq!(wc.subclass, Subclass::PsPlus);
    }
}

#[test]
fn subspace_counts() {
    for n in 1..=6 {
        for r in 0..=n {
            let all: Vec<_> = enumerate_subspaces(n, r).unwrap().collect();
            assert_eq!(all.len() as u128, gaussian_binomial(n, r));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
