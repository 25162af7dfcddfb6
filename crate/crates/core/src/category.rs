//! Finite categories given by composition tables.
//!
//! A [`FiniteCategory`] is produced only by [`validate`], so every value of
//! the type satisfies the category axioms. [`Presentation`] is the ordered,
//! skeletal EI form that the rest of the crate works with: object `i` of its
//! category is the `i`-th object of an admissible order, and morphisms only
//! ever go from a later object to an earlier one.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{BiSet, GroupTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MorId(pub usize);

/// Category JSON as read from disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    /// Triples `[f, g, h]` meaning `f ∘ g = h`.
    #[serde(default)]
    pub composition: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub identity: bool,
}

impl RawCategory {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum CategoryError {
    DuplicateObject { object: String },
    DuplicateMorphism { morphism: String },
    UnknownObject { morphism: String, object: String },
    UnknownMorphism { morphism: String },
    MissingIdentity { object: String },
    MultipleIdentities { object: String },
    BadIdentity { morphism: String },
    BadEndpoints { f: String, g: String, h: String },
    ConflictingComposition { f: String, g: String },
    IdentityLaw { f: String, g: String, h: String },
    IncompleteComposition { f: String, g: String },
    NonAssociative { f: String, g: String, h: String },
}

impl fmt::Display for CategoryError {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use CategoryError::*;
        match self {
            DuplicateObject { object } => write!(out, "DuplicateObject({object})"),
            DuplicateMorphism { morphism } => write!(out, "DuplicateMorphism({morphism})"),
            UnknownObject { morphism, object } => {
                write!(out, "UnknownObject({object} in {morphism})")
            }
            UnknownMorphism { morphism } => write!(out, "UnknownMorphism({morphism})"),
            MissingIdentity { object } => write!(out, "MissingIdentity({object})"),
            MultipleIdentities { object } => write!(out, "MultipleIdentities({object})"),
            BadIdentity { morphism } => write!(out, "BadIdentity({morphism})"),
            BadEndpoints { f, g, h } => write!(out, "BadEndpoints({f}∘{g}={h})"),
            ConflictingComposition { f, g } => write!(out, "ConflictingComposition({f}∘{g})"),
            IdentityLaw { f, g, h } => write!(out, "IdentityLaw({f}∘{g}={h})"),
            IncompleteComposition { f, g } => write!(out, "IncompleteComposition({f}∘{g})"),
            NonAssociative { f, g, h } => write!(out, "NonAssociative({f},{g},{h})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub src: ObjId,
    pub dst: ObjId,
    pub identity: bool,
}

/// A validated finite category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<MorId>,
    /// `compose[f * m + g] = f ∘ g` for composable pairs.
    compose: Vec<Option<MorId>>,
    /// `hom[src * n + dst]`, ascending morphism ids.
    hom: Vec<Vec<MorId>>,
}

/// Check every category axiom, reporting all violations found.
pub fn validate(raw: &RawCategory) -> Result<FiniteCategory, Vec<CategoryError>> {
    let mut errors = Vec::new();
    let mut obj_index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if obj_index.insert(o.as_str(), ObjId(i)).is_some() {
            errors.push(CategoryError::DuplicateObject { object: o.clone() });
        }
    }
    let mut mor_index = HashMap::new();
    let mut morphisms = Vec::with_capacity(raw.morphisms.len());
    for (i, m) in raw.morphisms.iter().enumerate() {
        if mor_index.insert(m.id.as_str(), MorId(i)).is_some() {
            errors.push(CategoryError::DuplicateMorphism { morphism: m.id.clone() });
        }
        let lookup = |name: &str, errors: &mut Vec<CategoryError>| {
            obj_index.get(name).copied().unwrap_or_else(|| {
                errors.push(CategoryError::UnknownObject { morphism: m.id.clone(), object: name.into() });
                ObjId(usize::MAX)
            })
        };
        let src = lookup(&m.src, &mut errors);
        let dst = lookup(&m.dst, &mut errors);
        if m.identity && src != dst {
            errors.push(CategoryError::BadIdentity { morphism: m.id.clone() });
        }
        morphisms.push(Morphism { name: m.id.clone(), src, dst, identity: m.identity });
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let n = raw.objects.len();
    let m = morphisms.len();
    let mut identities = vec![None; n];
    for (i, mor) in morphisms.iter().enumerate() {
        if mor.identity && mor.src == mor.dst {
            if identities[mor.src.0].is_some() {
                errors.push(CategoryError::MultipleIdentities { object: raw.objects[mor.src.0].clone() });
            }
            identities[mor.src.0] = Some(MorId(i));
        }
    }
    for (o, id) in identities.iter().enumerate() {
        if id.is_none() {
            errors.push(CategoryError::MissingIdentity { object: raw.objects[o].clone() });
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }
    let identities: Vec<MorId> = identities.into_iter().map(Option::unwrap).collect();
    let is_identity = |f: MorId| identities[morphisms[f.0].src.0] == f;

    let mut compose: Vec<Option<MorId>> = vec![None; m * m];
    for [f, g, h] in &raw.composition {
        let mut ids = [MorId(0); 3];
        let mut known = true;
        for (slot, name) in ids.iter_mut().zip([f, g, h]) {
            match mor_index.get(name.as_str()) {
                Some(&id) => *slot = id,
                None => {
                    errors.push(CategoryError::UnknownMorphism { morphism: name.clone() });
                    known = false;
                }
            }
        }
        if !known {
            continue;
        }
        let [fi, gi, hi] = ids;
        let (mf, mg, mh) = (&morphisms[fi.0], &morphisms[gi.0], &morphisms[hi.0]);
        if mf.src != mg.dst || mh.src != mg.src || mh.dst != mf.dst {
            errors.push(CategoryError::BadEndpoints { f: f.clone(), g: g.clone(), h: h.clone() });
            continue;
        }
        if (is_identity(fi) && hi != gi) || (is_identity(gi) && hi != fi) {
            errors.push(CategoryError::IdentityLaw { f: f.clone(), g: g.clone(), h: h.clone() });
            continue;
        }
        let slot = &mut compose[fi.0 * m + gi.0];
        match slot {
            Some(prev) if *prev != hi => {
                errors.push(CategoryError::ConflictingComposition { f: f.clone(), g: g.clone() })
            }
            _ => *slot = Some(hi),
        }
    }
    // Compositions with identities are inferred.
    for (i, mor) in morphisms.iter().enumerate() {
        let f = MorId(i);
        compose[identities[mor.dst.0].0 * m + i] = Some(f);
        compose[i * m + identities[mor.src.0].0] = Some(f);
    }
    for f in 0..m {
        for g in 0..m {
            if morphisms[f].src == morphisms[g].dst && compose[f * m + g].is_none() {
                errors.push(CategoryError::IncompleteComposition {
                    f: morphisms[f].name.clone(),
                    g: morphisms[g].name.clone(),
                });
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    for f in 0..m {
        for g in 0..m {
            let Some(fg) = compose[f * m + g] else { continue };
            for h in 0..m {
                let Some(gh) = compose[g * m + h] else { continue };
                let left = compose[fg.0 * m + h];
                let right = compose[f * m + gh.0];
                if left != right {
                    errors.push(CategoryError::NonAssociative {
                        f: morphisms[f].name.clone(),
                        g: morphisms[g].name.clone(),
                        h: morphisms[h].name.clone(),
                    });
                }
            }
        }
    }
    if !errors.is_empty() {
        return Err(errors);
    }

    let objects = raw.objects.clone();
    let hom = build_hom(n, &morphisms);
    Ok(FiniteCategory { objects, morphisms, identities, compose, hom })
}

fn build_hom(n: usize, morphisms: &[Morphism]) -> Vec<Vec<MorId>> {
    let mut hom = vec![Vec::new(); n * n];
    for (i, mor) in morphisms.iter().enumerate() {
        hom[mor.src.0 * n + mor.dst.0].push(MorId(i));
    }
    hom
}

/// Result of the EI check: the first non-invertible endomorphism, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EiCheck {
    pub is_ei: bool,
    pub witness: Option<MorId>,
}

impl FiniteCategory {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw = RawCategory::from_json(text)?;
        validate(&raw).map_err(Error::InvalidCategory)
    }

    pub fn to_raw(&self) -> RawCategory {
        let objects = self.objects.clone();
        let morphisms = self
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                id: m.name.clone(),
                src: self.objects[m.src.0].clone(),
                dst: self.objects[m.dst.0].clone(),
                identity: m.identity,
            })
            .collect();
        let mut composition = Vec::new();
        for f in self.morphism_ids() {
            if self.is_identity(f) {
                continue;
            }
            for g in self.morphism_ids() {
                if self.is_identity(g) {
                    continue;
                }
                if let Some(h) = self.compose(f, g) {
                    composition.push([self.name(f).into(), self.name(g).into(), self.name(h).into()]);
                }
            }
        }
        RawCategory { objects, morphisms, composition }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_raw()).expect("category serializes")
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjId) -> &str {
        &self.objects[x.0]
    }

    pub fn object_ids(&self) -> impl Iterator<Item = ObjId> {
        (0..self.objects.len()).map(ObjId)
    }

    pub fn morphism_ids(&self) -> impl Iterator<Item = MorId> {
        (0..self.morphisms.len()).map(MorId)
    }

    pub fn morphism(&self, f: MorId) -> &Morphism {
        &self.morphisms[f.0]
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn name(&self, f: MorId) -> &str {
        &self.morphisms[f.0].name
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].src
    }

    pub fn dst(&self, f: MorId) -> ObjId {
        self.morphisms[f.0].dst
    }

    pub fn identity(&self, x: ObjId) -> MorId {
        self.identities[x.0]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identities[self.src(f).0] == f
    }

    pub fn find_object(&self, name: &str) -> Option<ObjId> {
        self.objects.iter().position(|o| o == name).map(ObjId)
    }

    pub fn find_morphism(&self, name: &str) -> Option<MorId> {
        self.morphisms.iter().position(|m| m.name == name).map(MorId)
    }

    /// `f ∘ g`, defined when `src(f) = dst(g)`.
    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.compose[f.0 * self.morphisms.len() + g.0]
    }

    /// Morphisms `src → dst`.
    pub fn hom(&self, src: ObjId, dst: ObjId) -> &[MorId] {
        &self.hom[src.0 * self.objects.len() + dst.0]
    }

    pub fn is_endomorphism(&self, f: MorId) -> bool {
        self.src(f) == self.dst(f)
    }

    /// Two-sided inverse of `f`, if one exists.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (s, d) = (self.src(f), self.dst(f));
        self.hom(d, s).iter().copied().find(|&g| {
            self.compose(f, g) == Some(self.identity(d)) && self.compose(g, f) == Some(self.identity(s))
        })
    }

    pub fn is_isomorphism(&self, f: MorId) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_ei(&self) -> EiCheck {
        let witness = self
            .morphism_ids()
            .find(|&f| self.is_endomorphism(f) && !self.is_isomorphism(f));
        EiCheck { is_ei: witness.is_none(), witness }
    }

    pub fn are_isomorphic(&self, x: ObjId, y: ObjId) -> bool {
        x == y || self.hom(x, y).iter().any(|&f| self.is_isomorphism(f))
    }

    pub fn is_skeletal(&self) -> bool {
        self.first_isomorphic_pair().is_none()
    }

    fn first_isomorphic_pair(&self) -> Option<(ObjId, ObjId)> {
        for x in self.object_ids() {
            for y in self.object_ids().skip(x.0 + 1) {
                if self.are_isomorphic(x, y) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// The full subcategory on `objects` (kept in the given order), with the
    /// map from its morphism ids back to ours.
    pub fn full_subcategory(&self, objects: &[ObjId]) -> (FiniteCategory, Vec<MorId>) {
        let mut new_obj = vec![None; self.num_objects()];
        for (i, &x) in objects.iter().enumerate() {
            new_obj[x.0] = Some(ObjId(i));
        }
        let mut back = Vec::new();
        let mut forward = vec![None; self.num_morphisms()];
        let mut morphisms = Vec::new();
        for f in self.morphism_ids() {
            let mor = self.morphism(f);
            if let (Some(s), Some(d)) = (new_obj[mor.src.0], new_obj[mor.dst.0]) {
                forward[f.0] = Some(MorId(back.len()));
                back.push(f);
                morphisms.push(Morphism { name: mor.name.clone(), src: s, dst: d, identity: mor.identity });
            }
        }
        let m = back.len();
        let mut compose = vec![None; m * m];
        for (i, &f) in back.iter().enumerate() {
            for (j, &g) in back.iter().enumerate() {
                if let Some(h) = self.compose(f, g) {
                    compose[i * m + j] = forward[h.0];
                }
            }
        }
        let identities = objects.iter().map(|&x| forward[self.identity(x).0].unwrap()).collect();
        let names = objects.iter().map(|&x| self.objects[x.0].clone()).collect();
        let hom = build_hom(objects.len(), &morphisms);
        (FiniteCategory { objects: names, morphisms, identities, compose, hom }, back)
    }

    /// One representative per isomorphism class (the earliest object in
    /// input order). Returns the skeleton and, for every input object, the
    /// object of the skeleton it is isomorphic to.
    pub fn skeletalize(&self) -> (FiniteCategory, Vec<ObjId>) {
        let mut reps: Vec<ObjId> = Vec::new();
        let mut map = Vec::with_capacity(self.num_objects());
        for x in self.object_ids() {
            match reps.iter().position(|&r| self.are_isomorphic(r, x)) {
                Some(i) => map.push(ObjId(i)),
                None => {
                    map.push(ObjId(reps.len()));
                    reps.push(x);
                }
            }
        }
        let (skeleton, _) = self.full_subcategory(&reps);
        (skeleton, map)
    }

    /// Order the objects so that `Hom(x_i, x_j) = ∅` whenever `i < j`, ties
    /// broken by input order.
    pub fn admissible_order(&self) -> Result<Vec<ObjId>> {
        if let Some(f) = self.is_ei().witness {
            return Err(Error::NotEI(self.name(f).into()));
        }
        if let Some((x, y)) = self.first_isomorphic_pair() {
            return Err(Error::NotSkeletal(self.objects[x.0].clone(), self.objects[y.0].clone()));
        }
        let n = self.num_objects();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n).find(|&x| {
                !placed[x] && (0..n).all(|y| y == x || placed[y] || self.hom(ObjId(x), ObjId(y)).is_empty())
            });
            match next {
                Some(x) => {
                    placed[x] = true;
                    order.push(ObjId(x));
                }
                None => {
                    let rest: Vec<usize> = (0..n).filter(|&x| !placed[x]).collect();
                    return Err(Error::NotSkeletal(
                        self.objects[rest[0]].clone(),
                        self.objects[rest[1.min(rest.len() - 1)]].clone(),
                    ));
                }
            }
        }
        Ok(order)
    }

    /// Skeletal EI presentation in admissible order.
    pub fn present(&self) -> Result<Presentation> {
        let order = self.admissible_order()?;
        let (category, _) = self.full_subcategory(&order);
        Ok(Presentation::from_ordered(category, order))
    }

    /// Presentation in a caller-chosen order, which must be admissible.
    pub fn present_with_order(&self, order: &[ObjId]) -> Result<Presentation> {
        self.admissible_order()?;
        let mut seen = vec![false; self.num_objects()];
        for &x in order {
            if x.0 >= seen.len() || std::mem::replace(&mut seen[x.0], true) {
                return Err(Error::InvalidOrder("not a permutation of the objects".into()));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidOrder("not a permutation of the objects".into()));
        }
        for (a, &x) in order.iter().enumerate() {
            for &y in &order[a + 1..] {
                if !self.hom(x, y).is_empty() {
                    return Err(Error::InvalidOrder(format!(
                        "{} precedes {} but has a morphism to it",
                        self.object_name(x),
                        self.object_name(y)
                    )));
                }
            }
        }
        let (category, _) = self.full_subcategory(order);
        Ok(Presentation::from_ordered(category, order.to_vec()))
    }

    /// Every admissible order, for small categories.
    pub fn admissible_orders(&self) -> Vec<Vec<ObjId>> {
        fn extend(c: &FiniteCategory, prefix: &mut Vec<ObjId>, placed: &mut [bool], out: &mut Vec<Vec<ObjId>>) {
            let n = placed.len();
            if prefix.len() == n {
                out.push(prefix.clone());
                return;
            }
            for x in 0..n {
                let ready = !placed[x]
                    && (0..n).all(|y| y == x || placed[y] || c.hom(ObjId(x), ObjId(y)).is_empty());
                if ready {
                    placed[x] = true;
                    prefix.push(ObjId(x));
                    extend(c, prefix, placed, out);
                    prefix.pop();
                    placed[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        extend(self, &mut Vec::new(), &mut vec![false; self.num_objects()], &mut out);
        out
    }
}

/// A skeletal EI category whose object `i` is `x_{i+1}` of an admissible
/// order, together with the automorphism groups of its objects.
#[derive(Debug, Clone)]
pub struct Presentation {
    category: FiniteCategory,
    original: Vec<ObjId>,
    auts: Vec<GroupTable>,
    /// Group element index -> automorphism, per position.
    aut_morphisms: Vec<Vec<MorId>>,
    /// Automorphism -> group element index.
    aut_index: Vec<Option<usize>>,
}

impl Presentation {
    fn from_ordered(category: FiniteCategory, original: Vec<ObjId>) -> Self {
        let n = category.num_objects();
        let mut auts = Vec::with_capacity(n);
        let mut aut_morphisms = Vec::with_capacity(n);
        let mut aut_index = vec![None; category.num_morphisms()];
        for x in category.object_ids() {
            let elems: Vec<MorId> = category.hom(x, x).to_vec();
            for (k, &g) in elems.iter().enumerate() {
                aut_index[g.0] = Some(k);
            }
            let idx = |g: MorId| elems.iter().position(|&e| e == g).unwrap();
            let table = elems
                .iter()
                .flat_map(|&g| elems.iter().map(move |&h| (g, h)))
                .map(|(g, h)| idx(category.compose(g, h).unwrap()))
                .collect();
            let names = elems.iter().map(|&g| category.name(g).to_string()).collect();
            let group = GroupTable::from_parts(names, table, idx(category.identity(x)))
                .expect("automorphisms of an EI category form a group");
            auts.push(group);
            aut_morphisms.push(elems);
        }
        Presentation { category, original, auts, aut_morphisms, aut_index }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    /// Number of objects.
    pub fn n(&self) -> usize {
        self.category.num_objects()
    }

    /// Positions of the objects in the category this presentation was built from.
    pub fn original_objects(&self) -> &[ObjId] {
        &self.original
    }

    pub fn ordering_names(&self) -> Vec<String> {
        self.category.objects().to_vec()
    }

    pub fn object(&self, pos: usize) -> ObjId {
        ObjId(pos)
    }

    /// `Hom(x_j, x_i)`, positions 0-based.
    pub fn hom(&self, j: usize, i: usize) -> &[MorId] {
        self.category.hom(ObjId(j), ObjId(i))
    }

    pub fn aut(&self, i: usize) -> &GroupTable {
        &self.auts[i]
    }

    pub fn aut_morphism(&self, i: usize, element: usize) -> MorId {
        self.aut_morphisms[i][element]
    }

    pub fn aut_morphisms(&self, i: usize) -> &[MorId] {
        &self.aut_morphisms[i]
    }

    /// Group element of an automorphism.
    pub fn aut_element(&self, f: MorId) -> Option<usize> {
        self.aut_index[f.0]
    }

    /// In a skeletal EI category the isomorphisms are exactly the endomorphisms.
    pub fn is_iso(&self, f: MorId) -> bool {
        self.category.is_endomorphism(f)
    }

    pub fn src_pos(&self, f: MorId) -> usize {
        self.category.src(f).0
    }

    pub fn dst_pos(&self, f: MorId) -> usize {
        self.category.dst(f).0
    }

    pub fn name(&self, f: MorId) -> &str {
        self.category.name(f)
    }

    pub fn compose(&self, f: MorId, g: MorId) -> Option<MorId> {
        self.category.compose(f, g)
    }

    /// Non-isomorphisms, ascending id.
    pub fn non_isomorphisms(&self) -> impl Iterator<Item = MorId> + '_ {
        self.category.morphism_ids().filter(move |&f| !self.is_iso(f))
    }

    /// `Hom(x_j, x_i)` with `Aut(x_i)` acting by post-composition and
    /// `Aut(x_j)` by pre-composition.
    pub fn hom_biset(&self, i: usize, j: usize) -> BiSet {
        let set = self.hom(j, i).to_vec();
        let pos = |f: MorId| set.iter().position(|&s| s == f).expect("closed under automorphisms");
        let left = self
            .aut_morphisms(i)
            .iter()
            .map(|&g| set.iter().map(|&s| pos(self.compose(g, s).unwrap())).collect())
            .collect();
        let right = set
            .iter()
            .map(|&s| self.aut_morphisms(j).iter().map(|&h| pos(self.compose(s, h).unwrap())).collect())
            .collect();
        BiSet::from_parts(
            self.auts[i].clone(),
            self.auts[j].clone(),
            set.iter().map(|&s| self.name(s).to_string()).collect(),
            left,
            right,
        )
        .expect("hom sets are bisets")
    }

    /// The presentation of the full subcategory on the first `t` objects.
    pub fn leading(&self, t: usize) -> (Presentation, Vec<MorId>) {
        let objs: Vec<ObjId> = (0..t).map(ObjId).collect();
        let (sub, back) = self.category.full_subcategory(&objs);
        let original = self.original[..t].to_vec();
        (Presentation::from_ordered(sub, original), back)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str, bool)], comp: &[[&str; 3]]) -> RawCategory {
        RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|&(id, s, d, identity)| RawMorphism { id: id.into(), src: s.into(), dst: d.into(), identity })
                .collect(),
            composition: comp.iter().map(|t| t.map(String::from)).collect(),
        }
    }

    pub(crate) fn chain3() -> FiniteCategory {
        validate(&raw(
            &["x", "y", "z"],
            &[
                ("1x", "x", "x", true),
                ("1y", "y", "y", true),
                ("1z", "z", "z", true),
                ("a", "x", "y", false),
                ("b", "y", "z", false),
                ("c", "x", "z", false),
            ],
            &[["b", "a", "c"]],
        ))
        .unwrap()
    }

    #[test]
    fn single_object_is_valid() {
        let c = validate(&raw(&["x"], &[("1", "x", "x", true)], &[])).unwrap();
        assert_eq!(c.num_morphisms(), 1);
        assert!(c.is_ei().is_ei);
    }

    #[test]
    fn bad_endpoints_reported() {
        let err = validate(&raw(
            &["x", "y"],
            &[("1x", "x", "x", true), ("1y", "y", "y", true), ("a", "x", "y", false)],
            &[["a", "a", "a"]],
        ))
        .unwrap_err();
        assert!(err.iter().any(|e| matches!(e, CategoryError::BadEndpoints { .. })));
    }

    #[test]
    fn missing_identity_and_incomplete_composition() {
        let err = validate(&raw(&["x", "y"], &[("1x", "x", "x", true)], &[])).unwrap_err();
        assert_eq!(err, vec![CategoryError::MissingIdentity { object: "y".into() }]);
        let err = validate(&raw(
            &["x", "y", "z"],
            &[
                ("1x", "x", "x", true),
                ("1y", "y", "y", true),
                ("1z", "z", "z", true),
                ("a", "x", "y", false),
                ("b", "y", "z", false),
            ],
            &[],
        ))
        .unwrap_err();
        assert_eq!(err, vec![CategoryError::IncompleteComposition { f: "b".into(), g: "a".into() }]);
    }

    #[test]
    fn non_associative_detected() {
        // One object, elements {1, a, b}: a∘a = b, a∘b = a, b∘a = b, b∘b = b.
        let err = validate(&raw(
            &["x"],
            &[("1", "x", "x", true), ("a", "x", "x", false), ("b", "x", "x", false)],
            &[["a", "a", "b"], ["a", "b", "a"], ["b", "a", "b"], ["b", "b", "b"]],
        ))
        .unwrap_err();
        assert!(err.iter().all(|e| matches!(e, CategoryError::NonAssociative { .. })));
        assert!(!err.is_empty());
    }

    #[test]
    fn chain_is_valid_and_associative() {
        let c = chain3();
        assert_eq!(c.num_morphisms(), 6);
        let b = c.find_morphism("b").unwrap();
        let a = c.find_morphism("a").unwrap();
        assert_eq!(c.name(c.compose(b, a).unwrap()), "c");
        assert!(c.compose(a, b).is_none());
    }

    #[test]
    fn ei_check() {
        let z2 = validate(&raw(&["x"], &[("1", "x", "x", true), ("g", "x", "x", false)], &[["g", "g", "1"]])).unwrap();
        assert!(z2.is_ei().is_ei);
        assert!(chain3().is_ei().is_ei);
        let idem = validate(&raw(&["x"], &[("1", "x", "x", true), ("e", "x", "x", false)], &[["e", "e", "e"]])).unwrap();
        let check = idem.is_ei();
        assert!(!check.is_ei);
        assert_eq!(idem.name(check.witness.unwrap()), "e");
    }

    #[test]
    fn skeletalize_merges_isomorphic_copies() {
        let c = validate(&raw(
            &["x", "y"],
            &[("1x", "x", "x", true), ("1y", "y", "y", true), ("f", "x", "y", false), ("g", "y", "x", false)],
            &[["f", "g", "1y"], ["g", "f", "1x"]],
        ))
        .unwrap();
        let (s, map) = c.skeletalize();
        assert_eq!(s.num_objects(), 1);
        assert_eq!(map, vec![ObjId(0), ObjId(0)]);
        assert_eq!(s.num_morphisms(), 1);
        let (same, _) = chain3().skeletalize();
        assert_eq!(same, chain3());
    }

    #[test]
    fn chain_order_starts_at_the_top() {
        let order = chain3().admissible_order().unwrap();
        assert_eq!(order, vec![ObjId(2), ObjId(1), ObjId(0)]);
        let p = chain3().present().unwrap();
        assert_eq!(p.ordering_names(), vec!["z", "y", "x"]);
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(p.category().hom(ObjId(i), ObjId(j)).is_empty());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = chain3();
        let back = FiniteCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert!(RawCategory::from_json(r#"{"objects":[],"morphisms":[],"extra":1}"#).is_err());
    }
}
