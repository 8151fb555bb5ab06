#![allow(dead_code)]

use std::collections::HashMap;
use std::path::Path;

use golod::groebner::FreeModuleVector;
use golod::ideal::Ideal;
use golod::io::parse_ideal_file;
use golod::koszul::KoszulComplex;
use golod::linalg::{from_entries, Echelon, SparseVec};
use golod::poly::{Monomial, Polynomial, Ring, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The target ideal of every checked-in corpus file, by file stem.
pub fn corpus() -> Vec<(String, Ideal)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ideal"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let parsed = parse_ideal_file(&text).unwrap_or_else(|e| panic!("{}: {}", p.display(), e));
            let ideal = parsed
                .ideal("a")
                .cloned()
                .unwrap_or_else(|| parsed.ideals.last().unwrap().1.clone());
            (p.file_stem().unwrap().to_string_lossy().into_owned(), ideal)
        })
        .collect()
}

pub fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, degree: u32) -> Monomial {
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

fn nonzero_coefficient(rng: &mut ChaCha8Rng, ring: &Ring) -> Scalar {
    loop {
        let c = ring.scalar(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random homogeneous polynomial with up to `terms` terms.
pub fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Ring, degree: u32, terms: usize) -> Polynomial {
    loop {
        let f = Polynomial::from_terms(
            ring,
            (0..terms).map(|_| (random_monomial(rng, ring.num_vars(), degree), nonzero_coefficient(rng, ring))),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// Two or three generators of degree `min_degree..=max_degree`, each a
/// monomial or a binomial, with at least one generator of degree two or more.
pub fn random_mixed_ideal(rng: &mut ChaCha8Rng, ring: &Ring, min_degree: u32, max_degree: u32) -> Ideal {
    loop {
        let n = rng.gen_range(2..=3);
        let gens: Vec<Polynomial> = (0..n)
            .map(|_| {
                let deg = rng.gen_range(min_degree..=max_degree);
                let terms = if rng.gen_bool(0.5) { 1 } else { 2 };
                random_homogeneous(rng, ring, deg, terms)
            })
            .collect();
        if gens.iter().all(|g| g.degree() == Some(1)) {
            continue;
        }
        let a = Ideal::new(ring, gens).unwrap();
        if a.is_proper() && !a.is_zero() {
            return a;
        }
    }
}

/// `dim_k a_t` by spanning `{m·g}` over monomial coordinates.
pub fn brute_component_dim(a: &Ideal, t: u32) -> usize {
    brute_component(a, t).rank()
}

fn monomial_index(ring: &Ring, t: u32) -> HashMap<Monomial, usize> {
    Monomial::all_of_degree(ring.num_vars(), t)
        .into_iter()
        .enumerate()
        .map(|(k, m)| (m, k))
        .collect()
}

fn coords(f: &Polynomial, index: &HashMap<Monomial, usize>) -> SparseVec {
    from_entries(f.terms().iter().map(|(m, c)| (index[m], c.clone())))
}

fn brute_component(a: &Ideal, t: u32) -> Echelon {
    let ring = a.ring();
    let index = monomial_index(ring, t);
    let mut ech = Echelon::new(ring.field());
    for g in a.generators() {
        let dg = g.degree().unwrap();
        if dg > t {
            continue;
        }
        for m in Monomial::all_of_degree(ring.num_vars(), t - dg) {
            ech.insert(&coords(&g.mul_term(&m, &ring.one()), &index));
        }
    }
    ech
}

/// Membership of a homogeneous `f` in `a` by graded linear algebra only.
pub fn brute_contains(a: &Ideal, f: &Polynomial) -> bool {
    if f.is_zero() {
        return true;
    }
    let t = f.degree().unwrap();
    let ech = brute_component(a, t);
    ech.contains(&coords(f, &monomial_index(a.ring(), t)))
}

fn vector_coords(v: &FreeModuleVector, index: &HashMap<(usize, Monomial), usize>) -> SparseVec {
    from_entries(v.terms().iter().map(|(j, m, c)| (index[&(*j, m.clone())], c.clone())))
}

/// Rank of `∂_i` of the Koszul complex over `S` restricted to internal
/// degree `t`, from an explicit matrix.
pub fn koszul_rank_over_s(kc: &KoszulComplex, i: usize, t: u32) -> usize {
    if i == 0 || i > kc.num_vars() || (t as usize) < i {
        return 0;
    }
    let ring = kc.ring();
    let target: Vec<(usize, Monomial)> = (0..kc.rank(i - 1))
        .flat_map(|j| {
            Monomial::all_of_degree(ring.num_vars(), t - (i as u32 - 1))
                .into_iter()
                .map(move |m| (j, m))
        })
        .collect();
    let index: HashMap<(usize, Monomial), usize> = target.into_iter().enumerate().map(|(k, b)| (b, k)).collect();
    let columns = kc.differential_over_s(i).unwrap();
    let mut ech = Echelon::new(ring.field());
    for col in &columns {
        for m in Monomial::all_of_degree(ring.num_vars(), t - i as u32) {
            ech.insert(&vector_coords(&col.mul_term(&m, &ring.one()), &index));
        }
    }
    ech.rank()
}

/// `dim_k H_i(K^S)_t`.
pub fn koszul_homology_over_s(kc: &KoszulComplex, i: usize, t: u32) -> usize {
    let d = kc.num_vars();
    let chains = if (t as usize) < i {
        0
    } else {
        kc.rank(i) * Monomial::all_of_degree(d, t - i as u32).len()
    };
    chains - koszul_rank_over_s(kc, i, t) - koszul_rank_over_s(kc, i + 1, t)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) / (j + 1))
}
