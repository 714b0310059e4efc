use std::collections::{HashSet, VecDeque};

use braidcat::closure::{group_closure, projective_closure, scalar_spectrum, GroupElement};
use braidcat::rep::{DenseMatrix, Matrix, MonomialMatrix, RepSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(json: &str) -> RepSpec {
    serde_json::from_str(json).unwrap()
}

fn monomial_gens(json: &str) -> Vec<MonomialMatrix> {
    spec(json)
        .build()
        .unwrap()
        .generators
        .iter()
        .map(|g| g.as_monomial().unwrap().clone())
        .collect()
}

fn dense_gens(json: &str) -> Vec<DenseMatrix> {
    let rep = spec(json).build().unwrap();
    rep.generators.iter().map(|g| g.to_dense(rep.conductor).unwrap()).collect()
}

const MONOMIAL: [&str; 4] = [
    r#"{"family":"pointed","A":[2],"c":[["1","1"],["1","-1"]],"n":4}"#,
    r#"{"family":"pointed","A":[3],"gram":[["z3"]],"n":3}"#,
    r#"{"family":"double","group":{"kind":"cyclic","k":2},"alpha":{"builtin_j":1},"x":1,"n":3}"#,
    r#"{"family":"double","group":{"kind":"symmetric","k":3},"x":1,"n":2}"#,
];

const TY_Z2: &str = r#"{"family":"ty","A":[2],"q":["1","i"],"m":1}"#;

/// A monomial matrix with scalars in μ_N acts on `dim·N` points by
/// `(b, k) ↦ (p(b), k + e_b)`; the two groups are isomorphic.
fn as_point_permutation(m: &MonomialMatrix, n: u64) -> Vec<u32> {
    let dim = m.dim();
    let mut out = vec![0u32; dim * n as usize];
    for b in 0..dim {
        let e = m.scalar(b).exponent_at(n).expect("scalar lies in μ_N");
        for k in 0..n {
            out[b * n as usize + k as usize] = (m.perm(b) as u64 * n + (k + e) % n) as u32;
        }
    }
    out
}

/// Plain sequential BFS over permutations of `0..len`.
fn permutation_group_order(gens: &[Vec<u32>]) -> usize {
    let len = gens[0].len();
    let id: Vec<u32> = (0..len as u32).collect();
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y: Vec<u32> = (0..len).map(|i| g[x[i] as usize]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

#[test]
fn monomial_order_matches_point_permutation_oracle() {
    for json in MONOMIAL {
        let gens = monomial_gens(json);
        let n = gens.iter().flat_map(|g| g.scalars().iter()).fold(1u64, |acc, s| {
            let o = s.order();
            acc / gcd(acc, o) * o
        });
        let dim = gens[0].dim();
        let r = group_closure(&MonomialMatrix::identity(dim), &gens, 1_000_000, false).unwrap();
        let perms: Vec<Vec<u32>> = gens.iter().map(|g| as_point_permutation(g, n)).collect();
        assert_eq!(r.order, Some(permutation_group_order(&perms)), "{json}");
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn order_is_invariant_under_permutation_and_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for json in MONOMIAL {
        let gens = monomial_gens(json);
        let id = MonomialMatrix::identity(gens[0].dim());
        let base = group_closure(&id, &gens, 1_000_000, false).unwrap().order.unwrap();
        for _ in 0..4 {
            let mut g = gens.clone();
            for i in (1..g.len()).rev() {
                g.swap(i, rng.gen_range(0..=i));
            }
            let k = rng.gen_range(0..g.len());
            g[k] = g[k].try_inverse().unwrap();
            assert_eq!(group_closure(&id, &g, 1_000_000, false).unwrap().order, Some(base), "{json}");
        }
    }
    let gens = dense_gens(TY_Z2);
    let id = DenseMatrix::identity(2, gens[0].conductor());
    let swapped = [gens[1].try_inverse().unwrap(), gens[0].clone()];
    assert_eq!(group_closure(&id, &swapped, 10_000, false).unwrap().order, Some(192));
}

#[test]
fn completed_closures_are_closed_under_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let gens = dense_gens(TY_Z2);
    let id = DenseMatrix::identity(2, gens[0].conductor());
    let r = group_closure(&id, &gens, 10_000, true).unwrap();
    let elements = r.elements.unwrap();
    let store: HashSet<&DenseMatrix> = elements.iter().collect();
    for _ in 0..100 {
        let a = &elements[rng.gen_range(0..elements.len())];
        let b = &elements[rng.gen_range(0..elements.len())];
        assert!(store.contains(&a.compose(b)));
    }

    let gens = monomial_gens(MONOMIAL[2]);
    let r = group_closure(&MonomialMatrix::identity(gens[0].dim()), &gens, 10_000, true).unwrap();
    let elements = r.elements.unwrap();
    let store: HashSet<&MonomialMatrix> = elements.iter().collect();
    for _ in 0..100 {
        let a = &elements[rng.gen_range(0..elements.len())];
        let b = &elements[rng.gen_range(0..elements.len())];
        assert!(store.contains(&a.compose(b)));
    }
}

#[test]
fn projective_order_times_scalars_is_full_order() {
    let gens = dense_gens(TY_Z2);
    let id = DenseMatrix::identity(2, gens[0].conductor());
    let full = group_closure(&id, &gens, 10_000, true).unwrap();
    let proj = projective_closure(&id, &gens, 10_000, false).unwrap();
    let scalars: usize = scalar_spectrum(&full, 16).unwrap().scalars.iter().map(|e| e.multiplicity).sum();
    assert_eq!(proj.order.unwrap() * scalars, full.order.unwrap());

    for json in MONOMIAL {
        let gens = monomial_gens(json);
        let id = MonomialMatrix::identity(gens[0].dim());
        let full = group_closure(&id, &gens, 1_000_000, true).unwrap();
        let proj = projective_closure(&id, &gens, 1_000_000, false).unwrap();
        let scalars: usize = scalar_spectrum(&full, 6).unwrap().scalars.iter().map(|e| e.multiplicity).sum();
        assert_eq!(proj.order.unwrap() * scalars, full.order.unwrap(), "{json}");
    }
}

#[test]
fn dense_and_monomial_closures_agree() {
    let json = MONOMIAL[2];
    let mono = monomial_gens(json);
    let dense: Vec<DenseMatrix> = mono
        .iter()
        .map(|g| Matrix::Monomial(g.clone()).to_dense(4).unwrap())
        .collect();
    let a = group_closure(&MonomialMatrix::identity(mono[0].dim()), &mono, 10_000, false).unwrap();
    let b = group_closure(&DenseMatrix::identity(dense[0].dim(), 4), &dense, 10_000, false).unwrap();
    assert_eq!(a.order, b.order);
    assert_eq!(a.levels, b.levels);
}

#[test]
fn repeated_runs_list_elements_in_the_same_order() {
    let gens = dense_gens(TY_Z2);
    let id = DenseMatrix::identity(2, gens[0].conductor());
    let a = group_closure(&id, &gens, 10_000, true).unwrap().elements.unwrap();
    let b = group_closure(&id, &gens, 10_000, true).unwrap().elements.unwrap();
    assert_eq!(a, b);
}
