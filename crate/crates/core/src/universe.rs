//! Exhaustive enumeration of small posets, partitions and spaces.
//!
//! Labeled enumeration is literal: every order relation on `0..n`. The
//! unlabeled variants keep one representative per isomorphism class, chosen
//! as the relabelling with the lexicographically least up-set rows.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::poset::{default_name, EquivRelation, FinitePoset};
use crate::{ElementSet, Error, Result};

/// Largest `n` accepted by the enumerators here; beyond it the labeled
/// poset search (3^(n choose 2) candidates) is out of reach anyway.
pub const MAX_UNIVERSE: usize = 6;

fn check_n(n: usize) -> Result<()> {
    if n > MAX_UNIVERSE {
        return Err(Error::CapExceeded { what: "universe size", size: n as u64, cap: MAX_UNIVERSE as u64 });
    }
    Ok(())
}

fn names(n: usize) -> Vec<alloc::string::String> {
    (0..n).map(default_name).collect()
}

/// All partial orders on `0..n`, in a fixed deterministic order.
pub fn labeled_posets(n: usize) -> Result<Vec<FinitePoset>> {
    check_n(n)?;
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut choice = vec![0u8; pairs.len()];
    loop {
        let mut up: Vec<ElementSet> = (0..n).map(|i| ElementSet::singleton(n, i)).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            match choice[k] {
                1 => up[i].insert(j),
                2 => up[j].insert(i),
                _ => {}
            }
        }
        // The choices fix antisymmetry and reflexivity; keep transitive ones.
        let transitive =
            (0..n).all(|x| up[x].iter().all(|y| up[y].is_subset(&up[x])));
        if transitive {
            out.push(FinitePoset::from_up_rows(names(n), up));
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(out);
            }
            choice[k] += 1;
            if choice[k] < 3 {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// All equivalence relations on `0..n` via restricted growth strings.
pub fn set_partitions(n: usize) -> Result<Vec<EquivRelation>> {
    check_n(n)?;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(labels: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<EquivRelation>) {
        if i == labels.len() {
            out.push(EquivRelation::from_labels_unchecked(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(labels, i + 1, max.max(l), out);
        }
    }
    if n == 0 {
        out.push(EquivRelation::identity(0));
    } else {
        rec(&mut labels, 1, 0, &mut out);
    }
    Ok(out)
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn order_key(p: &FinitePoset, perm: &[usize]) -> Vec<u64> {
    let mut rows = vec![0u64; p.len()];
    for x in 0..p.len() {
        for y in p.up_of(x).iter() {
            rows[perm[x]] |= 1 << perm[y];
        }
    }
    rows
}

fn canonical_perm(p: &FinitePoset, perms: &[Vec<usize>]) -> (Vec<u64>, usize) {
    let mut best: Option<(Vec<u64>, usize)> = None;
    for (k, perm) in perms.iter().enumerate() {
        let key = order_key(p, perm);
        if best.as_ref().is_none_or(|(b, _)| key < *b) {
            best = Some((key, k));
        }
    }
    best.expect("at least one permutation")
}

/// One poset per isomorphism class, in canonical labelling.
pub fn unlabeled_posets(n: usize) -> Result<Vec<FinitePoset>> {
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in labeled_posets(n)? {
        let (key, k) = canonical_perm(&p, &perms);
        if seen.insert(key) {
            out.push(p.permuted(&perms[k]).with_names(names(n)));
        }
    }
    Ok(out)
}

/// One (poset, equivalence) pair per isomorphism class, where an
/// isomorphism must preserve both the order and the equivalence.
pub fn unlabeled_spaces(n: usize) -> Result<Vec<(FinitePoset, EquivRelation)>> {
    let perms = permutations(n);
    let parts = set_partitions(n)?;
    let mut out = Vec::new();
    for p in unlabeled_posets(n)? {
        let autos: Vec<&Vec<usize>> = {
            let base = order_key(&p, &perms[0]);
            perms.iter().filter(|perm| order_key(&p, perm) == base).collect()
        };
        let mut seen = BTreeSet::new();
        for e in &parts {
            let key = autos.iter().map(|perm| e.permuted(perm)).min().expect("identity is an automorphism");
            if seen.insert(key) {
                out.push((p.clone(), e.clone()));
            }
        }
    }
    Ok(out)
}
