//! Families of EI categories: posets, transporter categories, group
//! categories, categories assembled from bisets, and a seeded random corpus.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::category::{validate, CategoryError, FiniteCategory, RawCategory, RawMorphism};
use crate::error::{Error, Result};
use crate::group::{BiSet, GroupAction, GroupJson, GroupTable};

/// Poset JSON: `relations` lists pairs `[x, y]` meaning `x ≤ y`; the
/// reflexive-transitive closure is taken on load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    /// `leq[x * n + y]` iff `x ≤ y`.
    leq: Vec<bool>,
}

impl Poset {
    /// Close `relations` (pairs of indices, `x ≤ y`) and check antisymmetry.
    pub fn new(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(Error::InvalidPoset(format!("duplicate element {e}")));
            }
        }
        let mut leq = vec![false; n * n];
        for x in 0..n {
            leq[x * n + x] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::InvalidPoset("relation mentions an unknown element".into()));
            }
            leq[x * n + y] = true;
        }
        for k in 0..n {
            for x in 0..n {
                if leq[x * n + k] {
                    for y in 0..n {
                        if leq[k * n + y] {
                            leq[x * n + y] = true;
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if leq[x * n + y] && leq[y * n + x] {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are distinct but each below the other",
                        elements[x], elements[y]
                    )));
                }
            }
        }
        Ok(Poset { elements, leq })
    }

    pub fn from_json_value(json: &PosetJson) -> Result<Self> {
        let index: HashMap<&str, usize> = json.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let lookup = |e: &String| index.get(e.as_str()).copied().ok_or_else(|| Error::UnknownElement(e.clone()));
        let relations = json
            .relations
            .iter()
            .map(|[x, y]| Ok((lookup(x)?, lookup(y)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.elements.clone(), &relations)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(text)?)
    }

    /// Covering relations only.
    pub fn to_json_value(&self) -> PosetJson {
        let n = self.len();
        let relations = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)))
            .map(|(x, y)| [self.elements[x].clone(), self.elements[y].clone()])
            .collect();
        PosetJson { elements: self.elements.clone(), relations }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `[x, y] = {z : x ≤ z ≤ y}`.
    pub fn interval(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    /// Elements named `0..n` with `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(names, &rel).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string()).collect(), &[]).expect("antichain")
    }

    /// `bottom < left, right < top`.
    pub fn diamond() -> Self {
        let names = ["bottom", "left", "right", "top"].map(String::from).to_vec();
        Self::new(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond")
    }
}

fn identity_name(x: &str) -> String {
    format!("id_{x}")
}

fn build(raw: RawCategory) -> Result<FiniteCategory> {
    validate(&raw).map_err(Error::InvalidCategory)
}

/// One morphism `x → y` for each `x ≤ y`.
pub fn poset_category(p: &Poset) -> FiniteCategory {
    let n = p.len();
    let e = &p.elements;
    let name = |x: usize, y: usize| if x == y { identity_name(&e[x]) } else { format!("{}<{}", e[x], e[y]) };
    let mut morphisms = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                morphisms.push(RawMorphism { id: name(x, y), src: e[x].clone(), dst: e[y].clone(), identity: x == y });
            }
        }
    }
    let mut composition = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if p.lt(x, y) && p.lt(y, z) {
                    composition.push([name(y, z), name(x, y), name(x, z)]);
                }
            }
        }
    }
    build(RawCategory { objects: e.clone(), morphisms, composition }).expect("posets are categories")
}

/// Every closed interval is a chain.
pub fn poset_is_free(p: &Poset) -> bool {
    let n = p.len();
    (0..n).all(|x| {
        (0..n).filter(|&y| p.leq(x, y)).all(|y| {
            let iv = p.interval(x, y);
            iv.iter().all(|&a| iv.iter().all(|&b| p.leq(a, b) || p.leq(b, a)))
        })
    })
}

/// `G ∝ P`: a morphism `x → y` is a group element `g` with `g x ≤ y`,
/// named `g:x->y`; composition multiplies group elements.
pub fn transporter_category(g: &GroupTable, p: &Poset, action: &GroupAction) -> Result<FiniteCategory> {
    if action.group() != g {
        return Err(Error::InvalidAction("action is over a different group".into()));
    }
    let n = p.len();
    // Poset index → action set index.
    let to_set: Vec<usize> = p
        .elements()
        .iter()
        .map(|e| action.set().iter().position(|s| s == e).ok_or_else(|| Error::UnknownElement(e.clone())))
        .collect::<Result<_>>()?;
    if action.set().len() != n {
        return Err(Error::InvalidAction("action set and poset differ".into()));
    }
    let mut to_poset = vec![0; n];
    for (i, &s) in to_set.iter().enumerate() {
        to_poset[s] = i;
    }
    let act = |h: usize, x: usize| to_poset[action.act(h, to_set[x])];
    for h in 0..g.order() {
        for x in 0..n {
            for y in 0..n {
                if p.leq(x, y) && !p.leq(act(h, x), act(h, y)) {
                    return Err(Error::NotOrderPreserving(format!(
                        "{} sends {} ≤ {} to a non-relation",
                        g.name(h),
                        p.elements[x],
                        p.elements[y]
                    )));
                }
            }
        }
    }
    let e = &p.elements;
    let name = |h: usize, x: usize, y: usize| format!("{}:{}->{}", g.name(h), e[x], e[y]);
    let mut morphisms = Vec::new();
    let mut homs: Vec<(usize, usize, usize)> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for h in 0..g.order() {
                if p.leq(act(h, x), y) {
                    let identity = x == y && h == g.identity();
                    morphisms.push(RawMorphism { id: name(h, x, y), src: e[x].clone(), dst: e[y].clone(), identity });
                    homs.push((h, x, y));
                }
            }
        }
    }
    let mut composition = Vec::new();
    for &(h2, y, z) in &homs {
        for &(h1, x, y1) in &homs {
            if y1 == y {
                composition.push([name(h2, y, z), name(h1, x, y), name(g.mul(h2, h1), x, z)]);
            }
        }
    }
    let c = build(RawCategory { objects: e.clone(), morphisms, composition })?;
    debug_assert!(c.is_ei().is_ei, "transporter categories are EI");
    Ok(c)
}

/// One object `*` whose morphisms are the group elements.
pub fn group_category(g: &GroupTable) -> FiniteCategory {
    let morphisms = (0..g.order())
        .map(|h| RawMorphism { id: g.name(h).into(), src: "*".into(), dst: "*".into(), identity: h == g.identity() })
        .collect();
    let composition = (0..g.order())
        .flat_map(|a| (0..g.order()).map(move |b| (a, b)))
        .map(|(a, b)| [g.name(a).to_string(), g.name(b).into(), g.name(g.mul(a, b)).into()])
        .collect();
    build(RawCategory { objects: vec!["*".into()], morphisms, composition }).expect("groups are categories")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisetObject {
    pub name: String,
    pub group: GroupJson,
}

/// `Hom(src, dst)` as a biset: `left` lists `[g, s, g∘s]` for `g ∈ Aut(dst)`
/// and `right` lists `[s, h, s∘h]` for `h ∈ Aut(src)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisetHom {
    pub src: String,
    pub dst: String,
    pub elements: Vec<String>,
    pub left: Vec<[String; 3]>,
    pub right: Vec<[String; 3]>,
}

/// Objects with automorphism groups, Hom bisets between distinct objects,
/// and `[f, g, f∘g]` for composable pairs of non-isomorphisms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BisetCategoryJson {
    pub objects: Vec<BisetObject>,
    #[serde(default)]
    pub homs: Vec<BisetHom>,
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

/// Automorphisms are named `object:element`; Hom elements keep their names.
pub fn biset_category(spec: &BisetCategoryJson) -> Result<FiniteCategory> {
    let mut groups = HashMap::new();
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut composition = Vec::new();
    for o in &spec.objects {
        let g = GroupTable::from_json_value(&o.group)?;
        let aut = |h: usize| format!("{}:{}", o.name, g.name(h));
        for h in 0..g.order() {
            morphisms.push(RawMorphism { id: aut(h), src: o.name.clone(), dst: o.name.clone(), identity: h == g.identity() });
            for k in 0..g.order() {
                composition.push([aut(h), aut(k), aut(g.mul(h, k))]);
            }
        }
        objects.push(o.name.clone());
        if groups.insert(o.name.as_str(), g).is_some() {
            return Err(Error::InvalidCategory(vec![CategoryError::DuplicateObject { object: o.name.clone() }]));
        }
    }
    for hom in &spec.homs {
        let group_of = |x: &str| groups.get(x).ok_or_else(|| Error::UnknownElement(x.into()));
        let (gd, gs) = (group_of(&hom.dst)?, group_of(&hom.src)?);
        if hom.src == hom.dst {
            return Err(Error::InvalidAction(format!("Hom({0}, {0}) must be the automorphism group", hom.src)));
        }
        let elem = |s: &String| {
            hom.elements.iter().position(|e| e == s).ok_or_else(|| Error::UnknownElement(s.clone()))
        };
        let grp = |g: &GroupTable, s: &String| g.index_of(s).ok_or_else(|| Error::UnknownElement(s.clone()));
        let m = hom.elements.len();
        let mut left = vec![vec![usize::MAX; m]; gd.order()];
        for [g, s, t] in &hom.left {
            left[grp(gd, g)?][elem(s)?] = elem(t)?;
        }
        let mut right = vec![vec![usize::MAX; gs.order()]; m];
        for [s, h, t] in &hom.right {
            right[elem(s)?][grp(gs, h)?] = elem(t)?;
        }
        let biset = BiSet::from_parts(gd.clone(), gs.clone(), hom.elements.clone(), left, right)?;
        for (s, name) in hom.elements.iter().enumerate() {
            morphisms.push(RawMorphism { id: name.clone(), src: hom.src.clone(), dst: hom.dst.clone(), identity: false });
            for g in 0..gd.order() {
                let t = &hom.elements[biset.left_act(g, s)];
                composition.push([format!("{}:{}", hom.dst, gd.name(g)), name.clone(), t.clone()]);
            }
            for h in 0..gs.order() {
                let t = &hom.elements[biset.right_act(s, h)];
                composition.push([name.clone(), format!("{}:{}", hom.src, gs.name(h)), t.clone()]);
            }
        }
    }
    composition.extend(spec.composition.iter().cloned());
    let raw = RawCategory { objects, morphisms, composition };
    validate(&raw).map_err(|errs| {
        let failures: Vec<String> = errs
            .iter()
            .filter(|e| matches!(e, CategoryError::NonAssociative { .. }))
            .map(ToString::to_string)
            .collect();
        if failures.is_empty() {
            Error::InvalidCategory(errs)
        } else {
            Error::AssociativityFailure(failures.join("; "))
        }
    })
}

/// Biset tables over named groups, converted to the JSON form.
struct BisetTables<'a> {
    left_group: &'a GroupTable,
    right_group: &'a GroupTable,
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl BisetTables<'_> {
    fn len(&self) -> usize {
        self.right.len()
    }

    fn to_hom(&self, src: &str, dst: &str, names: &[String]) -> BisetHom {
        let (lg, rg) = (self.left_group, self.right_group);
        let left = (0..lg.order())
            .flat_map(|g| (0..self.len()).map(move |s| (g, s)))
            .map(|(g, s)| [lg.name(g).to_string(), names[s].clone(), names[self.left[g][s]].clone()])
            .collect();
        let right = (0..self.len())
            .flat_map(|s| (0..rg.order()).map(move |h| (s, h)))
            .map(|(s, h)| [names[s].clone(), rg.name(h).to_string(), names[self.right[s][h]].clone()])
            .collect();
        BisetHom { src: src.into(), dst: dst.into(), elements: names.to_vec(), left, right }
    }
}

/// Disjoint union of the transitive bisets `(G × H) / K` for the given subgroups `K`.
fn coset_biset<'a>(left_group: &'a GroupTable, right_group: &'a GroupTable, subgroups: &[Vec<usize>]) -> BisetTables<'a> {
    let product = left_group.product(right_group);
    let m = right_group.order();
    let mut left = vec![Vec::new(); left_group.order()];
    let mut right = Vec::new();
    for k in subgroups {
        let action = GroupAction::cosets(&product, k);
        let offset = right.len();
        let size = action.set().len();
        for (g, row) in left.iter_mut().enumerate() {
            row.extend((0..size).map(|s| offset + action.act(g * m + right_group.identity(), s)));
        }
        for s in 0..size {
            right.push(
                (0..m)
                    .map(|h| offset + action.act(left_group.identity() * m + right_group.inv(h), s))
                    .collect(),
            );
        }
    }
    BisetTables { left_group, right_group, left, right }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Make the partition `parent` compatible with both actions.
fn close_congruence(parent: &mut [usize], left: &[Vec<usize>], right: &[Vec<usize>]) {
    let n = parent.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in a + 1..n {
                if find(parent, a) != find(parent, b) {
                    continue;
                }
                let images = left
                    .iter()
                    .map(|row| (row[a], row[b]))
                    .chain((0..right[a].len()).map(|h| (right[a][h], right[b][h])))
                    .collect::<Vec<_>>();
                for (u, v) in images {
                    let (ru, rv) = (find(parent, u), find(parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// `X ×_G Y`, optionally collapsed by the congruence generated by `merge`.
/// Returns the biset and the class of each pair `(x, y)` at `x * |Y| + y`.
fn balanced_product<'a>(
    x: &BisetTables<'a>,
    y: &BisetTables<'a>,
    merge: Option<(usize, usize)>,
) -> (BisetTables<'a>, Vec<usize>) {
    let (nx, ny) = (x.len(), y.len());
    let mid = x.right_group;
    let mut parent: Vec<usize> = (0..nx * ny).collect();
    for a in 0..nx {
        for b in 0..ny {
            for g in 0..mid.order() {
                let (u, v) = (find(&mut parent, x.right[a][g] * ny + b), find(&mut parent, a * ny + y.left[g][b]));
                if u != v {
                    parent[u] = v;
                }
            }
        }
    }
    let pair_left: Vec<Vec<usize>> =
        x.left.iter().map(|row| (0..nx * ny).map(|k| row[k / ny] * ny + k % ny).collect()).collect();
    let pair_right: Vec<Vec<usize>> = (0..nx * ny)
        .map(|k| (0..y.right_group.order()).map(|h| (k / ny) * ny + y.right[k % ny][h]).collect())
        .collect();
    if let Some((a, b)) = merge {
        let (u, v) = (find(&mut parent, a), find(&mut parent, b));
        parent[u] = v;
        close_congruence(&mut parent, &pair_left, &pair_right);
    }
    let mut class_index = HashMap::new();
    let classes: Vec<usize> = (0..nx * ny)
        .map(|k| {
            let r = find(&mut parent, k);
            let next = class_index.len();
            *class_index.entry(r).or_insert(next)
        })
        .collect();
    let count = class_index.len();
    let mut rep = vec![0; count];
    for (k, &c) in classes.iter().enumerate().rev() {
        rep[c] = k;
    }
    let left = pair_left.iter().map(|row| rep.iter().map(|&k| classes[row[k]]).collect()).collect();
    let right = rep.iter().map(|&k| pair_right[k].iter().map(|&j| classes[j]).collect()).collect();
    (BisetTables { left_group: x.left_group, right_group: y.right_group, left, right }, classes)
}

fn hom_names(src: &str, dst: &str, n: usize) -> Vec<String> {
    (0..n).map(|k| format!("{src}->{dst}#{k}")).collect()
}

fn biset_object(name: &str, g: &GroupTable) -> BisetObject {
    BisetObject { name: name.into(), group: g.to_json_value() }
}

/// Two objects `b → a` with `Aut(b) = Z/2` and `Hom(b, a)` a single orbit:
/// free (`{alpha, alpha_g}`) or fixed by the nontrivial automorphism (`{alpha}`).
fn z2_orbit_example(regular: bool) -> BisetCategoryJson {
    let z2 = GroupTable::cyclic(2);
    let trivial = GroupTable::trivial();
    let (elements, right) = if regular {
        (
            vec!["alpha".to_string(), "alpha_g".into()],
            vec![["alpha", "0", "alpha"], ["alpha", "1", "alpha_g"], ["alpha_g", "0", "alpha_g"], ["alpha_g", "1", "alpha"]],
        )
    } else {
        (vec!["alpha".to_string()], vec![["alpha", "0", "alpha"], ["alpha", "1", "alpha"]])
    };
    let left = elements.iter().map(|e| ["0".to_string(), e.clone(), e.clone()]).collect();
    BisetCategoryJson {
        objects: vec![biset_object("a", &trivial), biset_object("b", &z2)],
        homs: vec![BisetHom {
            src: "b".into(),
            dst: "a".into(),
            elements,
            left,
            right: right.iter().map(|t| t.map(String::from)).collect(),
        }],
        composition: Vec::new(),
    }
}

pub fn regular_orbit_spec() -> BisetCategoryJson {
    z2_orbit_example(true)
}

pub fn stabilized_alpha_spec() -> BisetCategoryJson {
    z2_orbit_example(false)
}

/// Named instances used throughout the tests and shipped in the corpus.
pub mod named {
    use super::*;

    /// `0 < 1 < 2` as a category.
    pub fn chain3() -> FiniteCategory {
        poset_category(&Poset::chain(3))
    }

    pub fn diamond() -> FiniteCategory {
        poset_category(&Poset::diamond())
    }

    pub fn z2() -> FiniteCategory {
        group_category(&GroupTable::cyclic(2))
    }

    /// `Aut(b) = Z/2` acting freely on `Hom(b, a) = {alpha, alpha_g}`.
    pub fn regular_orbit() -> FiniteCategory {
        biset_category(&regular_orbit_spec()).expect("regular orbit example")
    }

    /// `Hom(b, a) = {alpha}` with `alpha ∘ g = alpha`.
    pub fn stabilized_alpha() -> FiniteCategory {
        biset_category(&stabilized_alpha_spec()).expect("stabilized example")
    }

    pub fn all() -> Vec<(String, FiniteCategory)> {
        vec![
            ("chain3".into(), chain3()),
            ("diamond".into(), diamond()),
            ("z2".into(), z2()),
            ("regular-orbit".into(), regular_orbit()),
            ("stabilized-alpha".into(), stabilized_alpha()),
            ("antichain2".into(), poset_category(&Poset::antichain(2))),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLimits {
    pub max_objects: usize,
    pub max_group_order: usize,
    pub max_hom: usize,
    pub max_dim: usize,
}

impl Default for CorpusLimits {
    fn default() -> Self {
        CorpusLimits { max_objects: 4, max_group_order: 6, max_hom: 8, max_dim: 64 }
    }
}

impl CorpusLimits {
    pub fn admits(&self, c: &FiniteCategory) -> bool {
        let n = c.num_objects();
        n <= self.max_objects
            && c.num_morphisms() <= self.max_dim
            && c.is_ei().is_ei
            && c.object_ids().all(|x| c.object_ids().all(|y| {
                let size = c.hom(x, y).len();
                if x == y { size <= self.max_group_order } else { size <= self.max_hom }
            }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub category: FiniteCategory,
    pub source: CorpusSource,
}

/// The construction an entry came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorpusSource {
    Named,
    Poset(Poset),
    Transporter { group: GroupTable, poset: Poset, action: GroupAction },
    Biset,
    Group,
}

fn group_pool(max_order: usize) -> Vec<(&'static str, GroupTable)> {
    let all = [
        ("C1", GroupTable::trivial()),
        ("C2", GroupTable::cyclic(2)),
        ("C3", GroupTable::cyclic(3)),
        ("C4", GroupTable::cyclic(4)),
        ("V4", GroupTable::klein_four()),
        ("C5", GroupTable::cyclic(5)),
        ("C6", GroupTable::cyclic(6)),
        ("S3", GroupTable::symmetric3()),
    ];
    all.into_iter().filter(|(_, g)| g.order() <= max_order).collect()
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize) -> Poset {
    let mut rel = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(0.5) {
                rel.push((x, y));
            }
        }
    }
    // Relabel so that input order does not follow the order relation.
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let rel: Vec<_> = rel.into_iter().map(|(x, y)| (perm[x], perm[y])).collect();
    Poset::new((0..n).map(|i| format!("p{i}")).collect(), &rel).expect("acyclic by construction")
}

/// A `G`-set of at most `max_points` points, built from random coset spaces.
fn random_gset(rng: &mut ChaCha8Rng, g: &GroupTable, max_points: usize) -> Option<GroupAction> {
    let subgroups = g.subgroups();
    let mut act_rows: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let mut names = Vec::new();
    let orbits = rng.gen_range(1..=max_points);
    for o in 0..orbits {
        let fitting: Vec<&Vec<usize>> =
            subgroups.iter().filter(|k| names.len() + g.order() / k.len() <= max_points).collect();
        let Some(k) = fitting.choose(rng) else { break };
        let cosets = GroupAction::cosets(g, k);
        let offset = names.len();
        let size = cosets.set().len();
        for (h, row) in act_rows.iter_mut().enumerate() {
            row.extend((0..size).map(|s| offset + cosets.act(h, s)));
        }
        names.extend((0..size).map(|s| format!("o{o}.{s}")));
    }
    let m = names.len();
    let act = act_rows.into_iter().flatten().collect::<Vec<_>>();
    // `act` is grouped by group element, matching `GroupAction`'s layout.
    (m > 0).then(|| GroupAction::from_parts(g.clone(), names, act).expect("coset union"))
}

fn random_transporter(rng: &mut ChaCha8Rng, limits: &CorpusLimits) -> Option<(FiniteCategory, CorpusSource)> {
    let pool = group_pool(limits.max_group_order);
    let (_, g) = pool.choose(rng)?.clone();
    let action = random_gset(rng, &g, limits.max_objects)?;
    let n = action.set().len();
    let mut rel = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(0.3) {
                for h in 0..g.order() {
                    rel.push((action.act(h, x), action.act(h, y)));
                }
            }
        }
    }
    let poset = Poset::new(action.set().to_vec(), &rel).ok()?;
    let c = transporter_category(&g, &poset, &action).ok()?;
    Some((c, CorpusSource::Transporter { group: g, poset, action }))
}

fn random_subgroups(rng: &mut ChaCha8Rng, product: &GroupTable, max_size: usize) -> Vec<Vec<usize>> {
    let subgroups = product.subgroups();
    let mut chosen = Vec::new();
    let mut size = 0;
    let count = rng.gen_range(1..=2);
    for _ in 0..count {
        let fitting: Vec<&Vec<usize>> =
            subgroups.iter().filter(|k| size + product.order() / k.len() <= max_size).collect();
        if let Some(k) = fitting.choose(rng) {
            size += product.order() / k.len();
            chosen.push((*k).clone());
        }
    }
    chosen
}

/// Two objects `b → a`, `Hom(b, a)` a random biset.
fn random_two_object(rng: &mut ChaCha8Rng, limits: &CorpusLimits) -> Option<FiniteCategory> {
    let pool = group_pool(limits.max_group_order);
    let (_, ga) = pool.choose(rng)?.clone();
    let (_, gb) = pool.choose(rng)?.clone();
    let x = coset_biset(&ga, &gb, &random_subgroups(rng, &ga.product(&gb), limits.max_hom));
    if x.len() == 0 {
        return None;
    }
    let spec = BisetCategoryJson {
        objects: vec![biset_object("a", &ga), biset_object("b", &gb)],
        homs: vec![x.to_hom("b", "a", &hom_names("b", "a", x.len()))],
        composition: Vec::new(),
    };
    biset_category(&spec).ok()
}

/// Three objects `c → b → a` with `Hom(c, a)` the (possibly collapsed)
/// balanced product of the two other Hom sets, plus optional extra orbits.
fn random_three_object(rng: &mut ChaCha8Rng, limits: &CorpusLimits) -> Option<FiniteCategory> {
    let pool = group_pool(limits.max_group_order.min(3));
    let (_, ga) = pool.choose(rng)?.clone();
    let (_, gb) = pool.choose(rng)?.clone();
    let (_, gc) = pool.choose(rng)?.clone();
    let x = coset_biset(&ga, &gb, &random_subgroups(rng, &ga.product(&gb), 4));
    let y = coset_biset(&gb, &gc, &random_subgroups(rng, &gb.product(&gc), 4));
    if x.len() == 0 || y.len() == 0 {
        return None;
    }
    let pairs = x.len() * y.len();
    let merge = rng.gen_bool(0.5).then(|| (rng.gen_range(0..pairs), rng.gen_range(0..pairs)));
    let (z, classes) = balanced_product(&x, &y, merge);
    let extra = if rng.gen_bool(0.4) {
        coset_biset(&ga, &gc, &random_subgroups(rng, &ga.product(&gc), limits.max_hom.saturating_sub(z.len())))
    } else {
        BisetTables { left_group: &ga, right_group: &gc, left: vec![Vec::new(); ga.order()], right: Vec::new() }
    };
    let offset = z.len();
    let combined = BisetTables {
        left_group: &ga,
        right_group: &gc,
        left: z.left.iter().zip(&extra.left).map(|(a, b)| a.iter().copied().chain(b.iter().map(|s| s + offset)).collect()).collect(),
        right: z.right.iter().cloned().chain(extra.right.iter().map(|r| r.iter().map(|s| s + offset).collect())).collect(),
    };
    if combined.len() > limits.max_hom {
        return None;
    }
    let (xn, yn, zn) = (hom_names("b", "a", x.len()), hom_names("c", "b", y.len()), hom_names("c", "a", combined.len()));
    let composition = (0..pairs)
        .map(|k| [xn[k / y.len()].clone(), yn[k % y.len()].clone(), zn[classes[k]].clone()])
        .collect();
    let spec = BisetCategoryJson {
        objects: vec![biset_object("a", &ga), biset_object("b", &gb), biset_object("c", &gc)],
        homs: vec![x.to_hom("b", "a", &xn), y.to_hom("c", "b", &yn), combined.to_hom("c", "a", &zn)],
        composition,
    };
    biset_category(&spec).ok()
}

/// Deterministic stream: the named examples, then random draws from each
/// family in turn, keeping only draws within `limits`.
pub fn corpus(seed: u64, limits: &CorpusLimits, count: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<CorpusEntry> = named::all()
        .into_iter()
        .filter(|(_, c)| limits.admits(c))
        .map(|(name, category)| CorpusEntry { name, category, source: CorpusSource::Named })
        .collect();
    out.truncate(count);
    let families = ["poset", "transporter", "biset2", "biset3", "group"];
    let mut draw = 0usize;
    let mut attempts = 0usize;
    while out.len() < count && attempts < 100 * count.max(1) {
        attempts += 1;
        let family = families[draw % families.len()];
        let c = match family {
            "poset" => {
                // Larger posets are the ones with non-chain intervals.
                let n = rng.gen_range(limits.max_objects.clamp(1, 3)..=limits.max_objects.max(1));
                let poset = random_poset(&mut rng, n);
                Some((poset_category(&poset), CorpusSource::Poset(poset)))
            }
            "transporter" => random_transporter(&mut rng, limits),
            "biset2" => random_two_object(&mut rng, limits).map(|c| (c, CorpusSource::Biset)),
            "biset3" if limits.max_objects >= 3 => random_three_object(&mut rng, limits).map(|c| (c, CorpusSource::Biset)),
            "group" => group_pool(limits.max_group_order)
                .choose(&mut rng)
                .map(|(_, g)| (group_category(g), CorpusSource::Group)),
            _ => None,
        };
        if let Some((category, source)) = c.filter(|(c, _)| limits.admits(c)) {
            out.push(CorpusEntry { name: format!("{family}-{draw}"), category, source });
            draw += 1;
        } else if attempts % 8 == 0 {
            // Move on if a family keeps failing under tight limits.
            draw += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeness::is_free;
    use crate::group::is_projective_over;
    use crate::linalg::FieldSpec;

    #[test]
    fn poset_morphism_counts() {
        assert_eq!(poset_category(&Poset::antichain(2)).num_morphisms(), 2);
        assert_eq!(poset_category(&Poset::chain(3)).num_morphisms(), 6);
        assert_eq!(poset_category(&Poset::diamond()).num_morphisms(), 9);
    }

    #[test]
    fn poset_closure_and_antisymmetry() {
        let p = Poset::new(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(matches!(
            Poset::new(vec!["a".into(), "b".into()], &[(0, 1), (1, 0)]),
            Err(Error::InvalidPoset(_))
        ));
        let json = Poset::diamond().to_json_value();
        assert_eq!(json.relations.len(), 4);
        assert_eq!(Poset::from_json_value(&json).unwrap(), Poset::diamond());
    }

    #[test]
    fn poset_freeness() {
        assert!(poset_is_free(&Poset::chain(4)));
        assert!(!poset_is_free(&Poset::diamond()));
        assert!(poset_is_free(&Poset::antichain(3)));
        for p in [Poset::chain(3), Poset::diamond(), Poset::antichain(2)] {
            let free = is_free(&poset_category(&p).present().unwrap()).free;
            assert_eq!(free, poset_is_free(&p));
        }
    }

    #[test]
    fn biset_examples() {
        let regular = named::regular_orbit();
        assert_eq!(regular.num_morphisms(), 5);
        let stabilized = named::stabilized_alpha();
        assert_eq!(stabilized.num_morphisms(), 4);
        assert!(stabilized.find_morphism("alpha").is_some());
        assert!(stabilized.find_morphism("b:1").is_some());
        let empty = BisetCategoryJson {
            objects: vec![biset_object("a", &GroupTable::cyclic(2)), biset_object("b", &GroupTable::cyclic(3))],
            homs: vec![],
            composition: vec![],
        };
        assert_eq!(biset_category(&empty).unwrap().num_morphisms(), 5);
    }

    #[test]
    fn biset_associativity_failure() {
        // c → b → a, trivial groups, Hom(c, a) = {u, v}: composing via two
        // different routes must agree.
        let t = GroupTable::trivial();
        let hom = |src: &str, dst: &str, elems: &[&str]| BisetHom {
            src: src.into(),
            dst: dst.into(),
            elements: elems.iter().map(|s| s.to_string()).collect(),
            left: elems.iter().map(|e| ["0".to_string(), e.to_string(), e.to_string()]).collect(),
            right: elems.iter().map(|e| [e.to_string(), "0".into(), e.to_string()]).collect(),
        };
        let objs = ["a", "b", "c", "d"].map(|o| biset_object(o, &t)).to_vec();
        let spec = BisetCategoryJson {
            objects: objs,
            homs: vec![
                hom("b", "a", &["ba"]),
                hom("c", "b", &["cb"]),
                hom("d", "c", &["dc"]),
                hom("c", "a", &["ca"]),
                hom("d", "b", &["db"]),
                hom("d", "a", &["u", "v"]),
            ],
            composition: [
                ["ba", "cb", "ca"],
                ["cb", "dc", "db"],
                ["ca", "dc", "u"],
                ["ba", "db", "v"],
            ]
            .iter()
            .map(|t| t.map(String::from))
            .collect(),
        };
        assert!(matches!(biset_category(&spec), Err(Error::AssociativityFailure(_))));
    }

    #[test]
    fn transporter_examples() {
        // Z/2 swapping two incomparable points below a fixed top.
        let g = GroupTable::cyclic(2);
        let p = Poset::new(vec!["l".into(), "r".into(), "t".into()], &[(0, 2), (1, 2)]).unwrap();
        let action = GroupAction::from_parts(g.clone(), p.elements().to_vec(), vec![0, 1, 2, 1, 0, 2]).unwrap();
        let c = transporter_category(&g, &p, &action).unwrap();
        assert!(c.is_ei().is_ei);
        // Aut(l), Aut(r) trivial; l ↔ r isomorphisms; two maps into t from each; Aut(t) = Z/2.
        assert_eq!(c.num_morphisms(), 2 + 2 + 4 + 2);
        let skeleton = c.skeletalize().0;
        assert_eq!(skeleton.num_objects(), 2);
        for q in [0, 2, 3] {
            assert!(is_projective_over(&skeleton.present().unwrap(), FieldSpec::new(q).unwrap()).projective);
        }
        let trivial = GroupTable::trivial();
        let d = Poset::diamond();
        let t = transporter_category(&trivial, &d, &GroupAction::from_parts(trivial.clone(), d.elements().to_vec(), vec![0, 1, 2, 3]).unwrap()).unwrap();
        assert_eq!(t.num_morphisms(), poset_category(&d).num_morphisms());
        // A swap of a comparable pair is not order preserving.
        let chain = Poset::chain(2);
        let swap = GroupAction::from_parts(g.clone(), chain.elements().to_vec(), vec![0, 1, 1, 0]).unwrap();
        assert!(matches!(transporter_category(&g, &chain, &swap), Err(Error::NotOrderPreserving(_))));
    }

    #[test]
    fn group_categories() {
        assert_eq!(group_category(&GroupTable::trivial()).num_morphisms(), 1);
        assert_eq!(named::z2().num_morphisms(), 2);
    }

    #[test]
    fn corpus_is_deterministic_and_bounded() {
        let limits = CorpusLimits::default();
        let a = corpus(7, &limits, 40);
        let b = corpus(7, &limits, 40);
        assert_eq!(a, b);
        assert_eq!(a.len(), 40);
        assert!(a.iter().all(|e| limits.admits(&e.category)));
        let names: Vec<&str> = a.iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"stabilized-alpha"));
    }

    #[test]
    fn corpus_mixes_flags() {
        let entries = corpus(1, &CorpusLimits::default(), 100);
        let f2 = FieldSpec::new(2).unwrap();
        let (mut free, mut non_free, mut proj, mut non_proj) = (0, 0, 0, 0);
        for e in &entries {
            let p = crate::classifier::present_skeleton(&e.category).unwrap();
            if is_free(&p).free { free += 1 } else { non_free += 1 }
            if is_projective_over(&p, f2).projective { proj += 1 } else { non_proj += 1 }
        }
        assert!(free > 0 && non_free > 0 && proj > 0 && non_proj > 0, "{free} {non_free} {proj} {non_proj}");
    }
}
