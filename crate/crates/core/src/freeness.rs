//! Unfactorizable morphisms and freeness.
//!
//! A non-isomorphism is unfactorizable when every factorization of it has an
//! isomorphism on one side. A category is free when every non-isomorphism
//! factors into unfactorizables uniquely up to inserting automorphisms
//! between the factors. Two deciders are provided: [`is_free`] checks the
//! local "free from x" condition at every object, and [`ufp_direct`] checks
//! the unique factorization property itself by enumerating decompositions.

use serde::Serialize;

use crate::category::{MorId, ObjId, Presentation};
use crate::error::{Error, Result};
use crate::exec::Execution;

/// Unfactorizable morphisms of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfactorizableTable {
    n: usize,
    flags: Vec<bool>,
    /// `sets[j * n + i]` lists the unfactorizables `x_j → x_i`.
    sets: Vec<Vec<MorId>>,
}

impl UnfactorizableTable {
    pub fn is_unfactorizable(&self, f: MorId) -> bool {
        self.flags[f.0]
    }

    /// Unfactorizables `x_j → x_i`, positions 0-based.
    pub fn get(&self, j: usize, i: usize) -> &[MorId] {
        &self.sets[j * self.n + i]
    }

    pub fn all(&self) -> impl Iterator<Item = MorId> + '_ {
        self.flags.iter().enumerate().filter(|(_, &u)| u).map(|(k, _)| MorId(k))
    }
}

pub fn unfactorizables(p: &Presentation) -> UnfactorizableTable {
    let c = p.category();
    let n = p.n();
    let mut flags = vec![false; c.num_morphisms()];
    let mut sets = vec![Vec::new(); n * n];
    for alpha in p.non_isomorphisms() {
        let (s, d) = (p.src_pos(alpha), p.dst_pos(alpha));
        // A factorization with both sides non-invertible passes through an
        // object strictly between the endpoints.
        let factors = (d + 1..s).any(|z| {
            p.hom(s, z)
                .iter()
                .any(|&beta| p.hom(z, d).iter().any(|&gamma| p.compose(gamma, beta) == Some(alpha)))
        });
        if !factors {
            flags[alpha.0] = true;
            sets[s * n + d].push(alpha);
        }
    }
    UnfactorizableTable { n, flags, sets }
}

/// Shortest chain `[α_1, …, α_m]` of unfactorizables with
/// `α = α_m ∘ … ∘ α_1`, the first one found in breadth-first order.
pub fn decompose(p: &Presentation, table: &UnfactorizableTable, alpha: MorId) -> Result<Vec<MorId>> {
    if p.is_iso(alpha) {
        return Err(Error::IsIsomorphism(p.name(alpha).into()));
    }
    let c = p.category();
    let src = p.src_pos(alpha);
    let target = p.dst_pos(alpha);
    // parent[φ] = (previous composite, last factor)
    let mut parent: Vec<Option<(Option<MorId>, MorId)>> = vec![None; c.num_morphisms()];
    let mut frontier: Vec<MorId> = Vec::new();
    for d in target..src {
        for &u in table.get(src, d) {
            if parent[u.0].is_none() {
                parent[u.0] = Some((None, u));
                frontier.push(u);
            }
        }
    }
    while !frontier.is_empty() {
        if parent[alpha.0].is_some() {
            break;
        }
        let mut next = Vec::new();
        for &phi in &frontier {
            let z = p.dst_pos(phi);
            for d in target..z {
                for &u in table.get(z, d) {
                    let composite = p.compose(u, phi).expect("composable");
                    if parent[composite.0].is_none() {
                        parent[composite.0] = Some((Some(phi), u));
                        next.push(composite);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut chain = Vec::new();
    let mut cur = alpha;
    loop {
        let (prev, u) = parent[cur.0]
            .ok_or_else(|| Error::HypothesisViolated(format!("{} has no decomposition", p.name(alpha))))?;
        chain.push(u);
        match prev {
            Some(q) => cur = q,
            None => break,
        }
    }
    chain.reverse();
    Ok(chain)
}

/// A morphism with two factorizations `second ∘ first` that are not
/// related by an automorphism of the middle object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub morphism: String,
    pub first: Vec<String>,
    pub second: Vec<String>,
}

/// All factorizations `α = α_2 ∘ α_1` with `α_1` unfactorizable.
fn head_factorizations(p: &Presentation, table: &UnfactorizableTable, alpha: MorId) -> Vec<(MorId, MorId)> {
    let (s, d) = (p.src_pos(alpha), p.dst_pos(alpha));
    let mut out = Vec::new();
    for z in d..s {
        for &a1 in table.get(s, z) {
            for &a2 in p.hom(z, d) {
                if p.compose(a2, a1) == Some(alpha) {
                    out.push((a1, a2));
                }
            }
        }
    }
    out
}

/// Whether the two factorizations differ by an automorphism `h` of the
/// middle object: `β_1 = h ∘ α_1` and `β_2 = α_2 ∘ h⁻¹`.
fn conjugate(p: &Presentation, a: (MorId, MorId), b: (MorId, MorId)) -> bool {
    let z = p.dst_pos(a.0);
    if p.dst_pos(b.0) != z {
        return false;
    }
    let aut = p.aut(z);
    (0..aut.order()).any(|h| {
        let hm = p.aut_morphism(z, h);
        let hinv = p.aut_morphism(z, aut.inv(h));
        p.compose(hm, a.0) == Some(b.0) && p.compose(a.1, hinv) == Some(b.1)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreeFrom {
    pub free: bool,
    pub counterexample: Option<Counterexample>,
}

/// The "free from x" condition at position `x`: any two factorizations of a
/// non-isomorphism out of `x` with unfactorizable first factor are related
/// by an automorphism of the middle object.
pub fn is_free_from(p: &Presentation, table: &UnfactorizableTable, x: usize) -> FreeFrom {
    let names = |v: &[MorId]| v.iter().map(|&f| p.name(f).to_string()).collect::<Vec<_>>();
    for d in 0..x {
        for &alpha in p.hom(x, d) {
            let facts = head_factorizations(p, table, alpha);
            let Some(&first) = facts.first() else { continue };
            // Being related by an automorphism is an equivalence relation,
            // so comparing against one factorization covers every pair.
            if let Some(&bad) = facts.iter().find(|&&f| !conjugate(p, first, f)) {
                return FreeFrom {
                    free: false,
                    counterexample: Some(Counterexample {
                        morphism: p.name(alpha).into(),
                        first: names(&[first.0, first.1]),
                        second: names(&[bad.0, bad.1]),
                    }),
                };
            }
        }
    }
    FreeFrom { free: true, counterexample: None }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub free: bool,
    /// `(object, free from it)` in presentation order.
    pub free_from: Vec<(String, bool)>,
    pub counterexample: Option<Counterexample>,
}

pub fn is_free(p: &Presentation) -> FreenessReport {
    is_free_with(p, Execution::default())
}

pub fn is_free_with(p: &Presentation, exec: Execution) -> FreenessReport {
    let table = unfactorizables(p);
    let per_object = exec.map_range(p.n(), |x| is_free_from(p, &table, x));
    let free_from = per_object
        .iter()
        .enumerate()
        .map(|(x, r)| (p.category().object_name(ObjId(x)).to_string(), r.free))
        .collect();
    let counterexample = per_object.iter().find_map(|r| r.counterexample.clone());
    FreenessReport { free: per_object.iter().all(|r| r.free), free_from, counterexample }
}

/// Every decomposition of `alpha` into unfactorizables, factors listed from
/// the first applied to the last.
pub fn all_decompositions(p: &Presentation, table: &UnfactorizableTable, alpha: MorId) -> Vec<Vec<MorId>> {
    let mut out = Vec::new();
    let mut chain = Vec::new();
    extend_decompositions(p, table, alpha, None, &mut chain, &mut out);
    out
}

fn extend_decompositions(
    p: &Presentation,
    table: &UnfactorizableTable,
    alpha: MorId,
    composite: Option<MorId>,
    chain: &mut Vec<MorId>,
    out: &mut Vec<Vec<MorId>>,
) {
    if composite == Some(alpha) {
        out.push(chain.clone());
        return;
    }
    let target = p.dst_pos(alpha);
    let z = composite.map_or(p.src_pos(alpha), |c| p.dst_pos(c));
    for d in target..z {
        for &u in table.get(z, d) {
            let next = match composite {
                None => u,
                Some(c) => p.compose(u, c).expect("composable"),
            };
            // Only continue if the partial composite still extends to alpha.
            let reachable = next == alpha || p.hom(d, target).iter().any(|&g| p.compose(g, next) == Some(alpha));
            if reachable {
                chain.push(u);
                extend_decompositions(p, table, alpha, Some(next), chain, out);
                chain.pop();
            }
        }
    }
}

/// Whether `b` is obtained from `a` by inserting automorphisms
/// `h_1, …, h_{m-1}` between consecutive factors.
fn decompositions_equivalent(p: &Presentation, a: &[MorId], b: &[MorId]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    // h_prev is the automorphism already inserted before step i (identity at the start).
    fn search(p: &Presentation, a: &[MorId], b: &[MorId], i: usize, h_prev: MorId) -> bool {
        let m = a.len();
        let tail = p.compose(a[i], h_prev).expect("composable");
        if i + 1 == m {
            return tail == b[i];
        }
        let z = p.dst_pos(a[i]);
        if p.dst_pos(b[i]) != z {
            return false;
        }
        let aut = p.aut(z);
        (0..aut.order()).any(|h| {
            let hm = p.aut_morphism(z, h);
            p.compose(hm, tail) == Some(b[i]) && search(p, a, b, i + 1, p.aut_morphism(z, aut.inv(h)))
        })
    }
    let start = p.category().identity(ObjId(p.src_pos(a[0])));
    search(p, a, b, 0, start)
}

/// Unique factorization property, checked on every non-isomorphism by
/// enumerating all decompositions and all automorphism sequences.
pub fn ufp_direct(p: &Presentation) -> bool {
    let table = unfactorizables(p);
    p.non_isomorphisms().all(|alpha| {
        let decs = all_decompositions(p, &table, alpha);
        match decs.split_first() {
            None => false,
            Some((first, rest)) => rest.iter().all(|d| decompositions_equivalent(p, first, d)),
        }
    })
}

/// Whether `Hom(x_j, x_i)` is the disjoint union over `i ≤ l < j` of the
/// composites `Hom(x_l, x_i) ∘ Hom⁰(x_j, x_l)`. Indices are 1-based.
pub fn disjoint_union_holds(p: &Presentation, table: &UnfactorizableTable, i: usize, j: usize) -> Result<bool> {
    if i == 0 || j > p.n() || i >= j {
        return Err(Error::IndexOutOfRange { index: if i == 0 { i } else { j }, max: p.n() });
    }
    let (i, j) = (i - 1, j - 1);
    let hom = p.hom(j, i);
    let mut hits = vec![0usize; p.category().num_morphisms()];
    for l in i..j {
        let mut composites: Vec<MorId> = p
            .hom(l, i)
            .iter()
            .flat_map(|&g| table.get(j, l).iter().map(move |&b| p.compose(g, b).expect("composable")))
            .collect();
        composites.sort_unstable();
        composites.dedup();
        for f in composites {
            hits[f.0] += 1;
        }
    }
    Ok(hom.iter().all(|f| hits[f.0] == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{validate, RawCategory, RawMorphism};

    fn poset(elems: &[&str], covers: &[(&str, &str)]) -> Presentation {
        // Build the poset category from its Hasse diagram by transitive closure.
        let n = elems.len();
        let idx = |s: &str| elems.iter().position(|e| *e == s).unwrap();
        let mut le = vec![vec![false; n]; n];
        for a in 0..n {
            le[a][a] = true;
        }
        for &(a, b) in covers {
            le[idx(a)][idx(b)] = true;
        }
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a][k] && le[k][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
        let name = |a: usize, b: usize| format!("{}<{}", elems[a], elems[b]);
        let mut morphisms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if le[a][b] {
                    morphisms.push(RawMorphism {
                        id: name(a, b),
                        src: elems[a].into(),
                        dst: elems[b].into(),
                        identity: a == b,
                    });
                }
            }
        }
        let mut composition = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && le[a][b] && le[b][c] {
                        composition.push([name(b, c), name(a, b), name(a, c)]);
                    }
                }
            }
        }
        let raw = RawCategory { objects: elems.iter().map(|s| s.to_string()).collect(), morphisms, composition };
        validate(&raw).unwrap().present().unwrap()
    }

    fn chain() -> Presentation {
        poset(&["x", "y", "z"], &[("x", "y"), ("y", "z")])
    }

    fn diamond() -> Presentation {
        poset(&["x", "y1", "y2", "w"], &[("x", "y1"), ("x", "y2"), ("y1", "w"), ("y2", "w")])
    }

    fn mor(p: &Presentation, name: &str) -> MorId {
        p.category().find_morphism(name).unwrap()
    }

    #[test]
    fn chain_unfactorizables_and_decomposition() {
        let p = chain();
        let t = unfactorizables(&p);
        assert!(t.is_unfactorizable(mor(&p, "x<y")));
        assert!(t.is_unfactorizable(mor(&p, "y<z")));
        assert!(!t.is_unfactorizable(mor(&p, "x<z")));
        let chain = decompose(&p, &t, mor(&p, "x<z")).unwrap();
        assert_eq!(chain, vec![mor(&p, "x<y"), mor(&p, "y<z")]);
        assert_eq!(decompose(&p, &t, mor(&p, "x<y")).unwrap(), vec![mor(&p, "x<y")]);
        assert!(matches!(decompose(&p, &t, mor(&p, "x<x")), Err(Error::IsIsomorphism(_))));
    }

    #[test]
    fn chain_is_free() {
        let p = chain();
        let r = is_free(&p);
        assert!(r.free && r.counterexample.is_none());
        assert!(ufp_direct(&p));
        let t = unfactorizables(&p);
        assert!(disjoint_union_holds(&p, &t, 1, 3).unwrap());
    }

    #[test]
    fn diamond_is_not_free() {
        let p = diamond();
        assert_eq!(p.ordering_names(), vec!["w", "y1", "y2", "x"]);
        let t = unfactorizables(&p);
        let d = decompose(&p, &t, mor(&p, "x<w")).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], mor(&p, "x<y1"));
        let bottom = is_free_from(&p, &t, 3);
        assert!(!bottom.free);
        let ce = bottom.counterexample.unwrap();
        assert_eq!(ce.morphism, "x<w");
        assert!(is_free_from(&p, &t, 0).free);
        let r = is_free(&p);
        assert!(!r.free);
        assert!(!ufp_direct(&p));
        assert!(!disjoint_union_holds(&p, &t, 1, 4).unwrap());
        assert!(disjoint_union_holds(&p, &t, 2, 3).unwrap());
        assert_eq!(all_decompositions(&p, &t, mor(&p, "x<w")).len(), 2);
    }

    #[test]
    fn single_object_is_vacuously_free() {
        let p = poset(&["x"], &[]);
        assert!(is_free(&p).free);
        assert!(ufp_direct(&p));
        assert!(unfactorizables(&p).all().next().is_none());
    }

    #[test]
    fn execution_modes_agree() {
        let p = diamond();
        assert_eq!(is_free_with(&p, Execution::Sequential), is_free_with(&p, Execution::Parallel));
    }
}
