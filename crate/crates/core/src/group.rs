//! Finite groups as Cayley tables, group actions and bisets, and the
//! stabilizer criterion for projectivity of permutation modules.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::category::{MorId, Presentation};
use crate::error::{Error, Result};
use crate::linalg::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    names: Vec<String>,
    /// `table[g * n + h] = g·h`
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub identity: String,
    pub table: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub group: GroupJson,
    pub set: Vec<String>,
    pub act: Vec<[String; 3]>,
}

fn index_map(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, s) in names.iter().enumerate() {
        if map.insert(s.clone(), i).is_some() {
            return Err(Error::Parse(format!("duplicate {what} {s:?}")));
        }
    }
    Ok(map)
}

fn lookup(map: &HashMap<String, usize>, name: &str) -> Result<usize> {
    map.get(name).copied().ok_or_else(|| Error::UnknownElement(name.into()))
}

impl GroupTable {
    /// Validate a Cayley table given as `table[g * n + h] = g·h`.
    pub fn from_parts(names: Vec<String>, table: Vec<usize>, identity: usize) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n || identity >= n || table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table has the wrong shape".into()));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for g in 0..n {
            if mul(identity, g) != g || mul(g, identity) != g {
                return Err(Error::InvalidGroup(format!("{} is not the identity", names[identity])));
            }
        }
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| mul(g, h) == identity && mul(h, g) == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", names[g])))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "({0}{1}){2} != {0}({1}{2})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable { names, table, identity, inverses })
    }

    pub fn from_json_value(json: &GroupJson) -> Result<Self> {
        let idx = index_map(&json.elements, "element")?;
        let n = json.elements.len();
        let mut table = vec![usize::MAX; n * n];
        for [g, h, gh] in &json.table {
            let (g, h, gh) = (lookup(&idx, g)?, lookup(&idx, h)?, lookup(&idx, gh)?);
            if table[g * n + h] != usize::MAX && table[g * n + h] != gh {
                return Err(Error::InvalidGroup(format!("conflicting products for {g},{h}")));
            }
            table[g * n + h] = gh;
        }
        if table.contains(&usize::MAX) {
            return Err(Error::InvalidGroup("multiplication table is incomplete".into()));
        }
        Self::from_parts(json.elements.clone(), table, lookup(&idx, &json.identity)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_value(&serde_json::from_str(text)?)
    }

    pub fn to_json_value(&self) -> GroupJson {
        let n = self.order();
        let table = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| [self.names[g].clone(), self.names[h].clone(), self.names[self.mul(g, h)].clone()])
            .collect();
        GroupJson { elements: self.names.clone(), identity: self.names[self.identity].clone(), table }
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// Z/n with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_parts(names, table, 0).expect("cyclic group")
    }

    /// Permutations given as images of `0..degree`; must be closed under composition.
    /// `(σ·τ)(i) = σ(τ(i))`.
    pub fn from_permutations(names: Vec<String>, perms: &[Vec<usize>]) -> Result<Self> {
        let pos = |p: &Vec<usize>| perms.iter().position(|q| q == p);
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for s in perms {
            for t in perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                table.push(pos(&st).ok_or_else(|| Error::InvalidGroup("not closed".into()))?);
            }
        }
        let degree = perms.first().map_or(0, Vec::len);
        let id: Vec<usize> = (0..degree).collect();
        let identity = pos(&id).ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        Self::from_parts(names, table, identity)
    }

    /// S_3 acting on {0,1,2}.
    pub fn symmetric3() -> Self {
        let perms = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        let names = ["e", "s01", "s12", "s02", "r", "r2"].map(String::from).to_vec();
        Self::from_permutations(names, &perms).expect("S3")
    }

    /// Z/2 × Z/2.
    pub fn klein_four() -> Self {
        let names = ["e", "a", "b", "c"].map(String::from).to_vec();
        let table = (0..16).map(|k| (k / 4) ^ (k % 4)).collect();
        Self::from_parts(names, table, 0).expect("Klein four")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g * self.names.len() + h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Direct product, element `(g, h)` at index `g * |H| + h`, named `g,h`.
    pub fn product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.order(), other.order());
        let names = (0..n * m).map(|k| format!("{},{}", self.names[k / m], other.names[k % m])).collect();
        let table = (0..n * m)
            .flat_map(|a| (0..n * m).map(move |b| (a, b)))
            .map(|(a, b)| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
            .collect();
        GroupTable::from_parts(names, table, self.identity * m + other.identity).expect("product group")
    }

    /// Subgroup generated by `elements`, as a sorted element list.
    pub fn generated(&self, elements: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut out = vec![self.identity];
        let mut frontier = out.clone();
        while let Some(a) = frontier.pop() {
            for &g in elements {
                let b = self.mul(a, g);
                if !member[b] {
                    member[b] = true;
                    out.push(b);
                    frontier.push(b);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// All subgroups, each as a sorted element list, found by adjoining one
    /// element at a time to subgroups already found.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found = vec![vec![self.identity]];
        let mut next = 0;
        while next < found.len() {
            let base = found[next].clone();
            next += 1;
            for g in 0..self.order() {
                if base.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = base.clone();
                gens.push(g);
                let h = self.generated(&gens);
                if !found.contains(&h) {
                    found.push(h);
                }
            }
        }
        found
    }
}

/// A left action of a finite group on a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: GroupTable,
    set: Vec<String>,
    /// `act[g * |X| + x] = g.x`
    act: Vec<usize>,
}

impl GroupAction {
    pub fn from_parts(group: GroupTable, set: Vec<String>, act: Vec<usize>) -> Result<Self> {
        let m = set.len();
        if act.len() != group.order() * m || act.iter().any(|&x| x >= m) {
            return Err(Error::InvalidAction("action table has the wrong shape".into()));
        }
        let a = |g: usize, x: usize| act[g * m + x];
        for x in 0..m {
            if a(group.identity(), x) != x {
                return Err(Error::InvalidAction(format!("identity moves {}", set[x])));
            }
            for g in 0..group.order() {
                for h in 0..group.order() {
                    if a(group.mul(g, h), x) != a(g, a(h, x)) {
                        return Err(Error::InvalidAction(format!(
                            "({}{}).{} != {}.({}.{})",
                            group.name(g),
                            group.name(h),
                            set[x],
                            group.name(g),
                            group.name(h),
                            set[x]
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { group, set, act })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: ActionJson = serde_json::from_str(text)?;
        let group = GroupTable::from_json_value(&json.group)?;
        let gi = index_map(group.names(), "element")?;
        let xi = index_map(&json.set, "set element")?;
        let m = json.set.len();
        let mut act = vec![usize::MAX; group.order() * m];
        for [g, x, gx] in &json.act {
            act[lookup(&gi, g)? * m + lookup(&xi, x)?] = lookup(&xi, gx)?;
        }
        if act.contains(&usize::MAX) {
            return Err(Error::InvalidAction("action table is incomplete".into()));
        }
        Self::from_parts(group, json.set, act)
    }

    /// The group acting on itself by left multiplication.
    pub fn regular(group: &GroupTable) -> Self {
        let n = group.order();
        let act = (0..n * n).map(|k| group.mul(k / n, k % n)).collect();
        Self::from_parts(group.clone(), group.names().to_vec(), act).expect("regular action")
    }

    /// The trivial action on a single point.
    pub fn trivial_point(group: &GroupTable) -> Self {
        Self::from_parts(group.clone(), vec!["*".into()], vec![0; group.order()]).expect("trivial action")
    }

    /// Left multiplication on the cosets `gH` of a subgroup.
    pub fn cosets(group: &GroupTable, subgroup: &[usize]) -> Self {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..group.order() {
            let mut c: Vec<usize> = subgroup.iter().map(|&h| group.mul(g, h)).collect();
            c.sort_unstable();
            if !classes.contains(&c) {
                classes.push(c);
            }
        }
        let m = classes.len();
        let class_of = |g: usize| classes.iter().position(|c| c.contains(&g)).unwrap();
        let act = (0..group.order() * m).map(|k| class_of(group.mul(k / m, classes[k % m][0]))).collect();
        let set = classes.iter().map(|c| format!("{}H", group.name(c[0]))).collect();
        Self::from_parts(group.clone(), set, act).expect("coset action")
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn set(&self) -> &[String] {
        &self.set
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.set.len() + x]
    }

    fn point(&self, name: &str) -> Result<usize> {
        self.set.iter().position(|s| s == name).ok_or_else(|| Error::UnknownElement(name.into()))
    }

    pub fn stabilizer_order(&self, x: &str) -> Result<usize> {
        Ok(self.stabilizer_order_at(self.point(x)?))
    }

    pub fn stabilizer_order_at(&self, x: usize) -> usize {
        (0..self.group.order()).filter(|&g| self.act(g, x) == x).count()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.group.order()).map(|g| self.act(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits, each listed with its smallest point first.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.set.len()];
        let mut out = Vec::new();
        for x in 0..self.set.len() {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    /// The permutation module `kX` is projective iff every stabilizer order
    /// is invertible in `k`.
    pub fn permutation_module_projective(&self, field: FieldSpec) -> PermutationProjectivity {
        let offending = self
            .orbits()
            .into_iter()
            .filter_map(|o| {
                let s = self.stabilizer_order_at(o[0]);
                (!field.is_invertible(s as u64)).then(|| OffendingOrbit { representative: self.set[o[0]].clone(), stabilizer_order: s })
            })
            .collect::<Vec<_>>();
        PermutationProjectivity { projective: offending.is_empty(), offending }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OffendingOrbit {
    pub representative: String,
    pub stabilizer_order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermutationProjectivity {
    pub projective: bool,
    pub offending: Vec<OffendingOrbit>,
}

/// A set with commuting left `G`- and right `H`-actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSet {
    left_group: GroupTable,
    right_group: GroupTable,
    set: Vec<String>,
    /// `left[g][s] = g.s`
    left: Vec<Vec<usize>>,
    /// `right[s][h] = s.h`
    right: Vec<Vec<usize>>,
}

impl BiSet {
    pub fn from_parts(
        left_group: GroupTable,
        right_group: GroupTable,
        set: Vec<String>,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let m = set.len();
        let shape_ok = left.len() == left_group.order()
            && left.iter().all(|r| r.len() == m && r.iter().all(|&x| x < m))
            && right.len() == m
            && right.iter().all(|r| r.len() == right_group.order() && r.iter().all(|&x| x < m));
        if !shape_ok {
            return Err(Error::InvalidAction("biset tables have the wrong shape".into()));
        }
        let (g_n, h_n) = (left_group.order(), right_group.order());
        for s in 0..m {
            if left[left_group.identity()][s] != s || right[s][right_group.identity()] != s {
                return Err(Error::InvalidAction(format!("identity moves {}", set[s])));
            }
            for a in 0..g_n {
                for b in 0..g_n {
                    if left[left_group.mul(a, b)][s] != left[a][left[b][s]] {
                        return Err(Error::InvalidAction("left action is not associative".into()));
                    }
                }
            }
            for a in 0..h_n {
                for b in 0..h_n {
                    if right[s][right_group.mul(a, b)] != right[right[s][a]][b] {
                        return Err(Error::InvalidAction("right action is not associative".into()));
                    }
                }
            }
            for g in 0..g_n {
                for h in 0..h_n {
                    if right[left[g][s]][h] != left[g][right[s][h]] {
                        return Err(Error::InvalidAction("left and right actions do not commute".into()));
                    }
                }
            }
        }
        Ok(BiSet { left_group, right_group, set, left, right })
    }

    pub fn left_group(&self) -> &GroupTable {
        &self.left_group
    }

    pub fn right_group(&self) -> &GroupTable {
        &self.right_group
    }

    pub fn set(&self) -> &[String] {
        &self.set
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn left_act(&self, g: usize, s: usize) -> usize {
        self.left[g][s]
    }

    pub fn right_act(&self, s: usize, h: usize) -> usize {
        self.right[s][h]
    }

    pub fn left_stabilizer_order(&self, s: usize) -> usize {
        (0..self.left_group.order()).filter(|&g| self.left[g][s] == s).count()
    }

    pub fn right_stabilizer_order(&self, s: usize) -> usize {
        (0..self.right_group.order()).filter(|&h| self.right[s][h] == s).count()
    }

    /// Orbits of `G × H^op`, smallest element first.
    pub fn two_sided_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            let mut orbit = Vec::new();
            for g in 0..self.left_group.order() {
                for h in 0..self.right_group.order() {
                    let t = self.right[self.left[g][s]][h];
                    if !seen[t] {
                        seen[t] = true;
                        orbit.push(t);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// The left action as a [`GroupAction`].
    pub fn left_action(&self) -> GroupAction {
        let m = self.len();
        let act = (0..self.left_group.order() * m).map(|k| self.left[k / m][k % m]).collect();
        GroupAction::from_parts(self.left_group.clone(), self.set.clone(), act).expect("left action")
    }

    /// The right action, turned into a left action via `h.s = s.h⁻¹`.
    pub fn right_action(&self) -> GroupAction {
        let m = self.len();
        let g = &self.right_group;
        let act = (0..g.order() * m).map(|k| self.right[k % m][g.inv(k / m)]).collect();
        GroupAction::from_parts(g.clone(), self.set.clone(), act).expect("right action")
    }
}

/// Orders `(|L_α|, |R_α|)` of the automorphisms of the target fixing `α`
/// under post-composition and of the source under pre-composition.
pub fn morphism_stabilizers(p: &Presentation, alpha: MorId) -> (usize, usize) {
    let (s, d) = (p.src_pos(alpha), p.dst_pos(alpha));
    let left = p.aut_morphisms(d).iter().filter(|&&g| p.compose(g, alpha) == Some(alpha)).count();
    let right = p.aut_morphisms(s).iter().filter(|&&h| p.compose(alpha, h) == Some(alpha)).count();
    (left, right)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StabilizerWitness {
    pub morphism: String,
    pub left_stabilizer: usize,
    pub right_stabilizer: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectivityReport {
    pub projective: bool,
    /// One morphism per violating two-sided orbit.
    pub witnesses: Vec<StabilizerWitness>,
}

/// Whether `kC` is projective as a bimodule over its vertex group algebras,
/// decided by invertibility of the stabilizer orders of every non-isomorphism.
pub fn is_projective_over(p: &Presentation, field: FieldSpec) -> ProjectivityReport {
    let mut witnesses = Vec::new();
    for i in 0..p.n() {
        for j in i + 1..p.n() {
            let hom = p.hom(j, i);
            if hom.is_empty() {
                continue;
            }
            // Stabilizer orders are constant on two-sided orbits.
            for orbit in p.hom_biset(i, j).two_sided_orbits() {
                let alpha = hom[orbit[0]];
                let (l, r) = morphism_stabilizers(p, alpha);
                if !field.is_invertible(l as u64) || !field.is_invertible(r as u64) {
                    witnesses.push(StabilizerWitness {
                        morphism: p.name(alpha).into(),
                        left_stabilizer: l,
                        right_stabilizer: r,
                    });
                }
            }
        }
    }
    ProjectivityReport { projective: witnesses.is_empty(), witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_are_valid() {
        assert_eq!(GroupTable::symmetric3().order(), 6);
        assert_eq!(GroupTable::klein_four().order(), 4);
        assert_eq!(GroupTable::cyclic(5).subgroups().len(), 2);
        assert_eq!(GroupTable::symmetric3().subgroups().len(), 6);
        assert_eq!(GroupTable::klein_four().subgroups().len(), 5);
    }

    #[test]
    fn non_associative_table_rejected() {
        // Latin square with identity 0 that is not associative.
        let t = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        let names = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(GroupTable::from_parts(names, t, 0), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn stabilizer_examples() {
        let z2 = GroupTable::cyclic(2);
        assert_eq!(GroupAction::regular(&z2).stabilizer_order("1").unwrap(), 1);
        assert_eq!(GroupAction::trivial_point(&z2).stabilizer_order("*").unwrap(), 2);
        // S3 on {0,1,2} as cosets of the stabilizer {e, s12} of the point 0.
        let s3 = GroupTable::symmetric3();
        let act = GroupAction::cosets(&s3, &[0, 2]);
        assert_eq!(act.set().len(), 3);
        assert_eq!(act.stabilizer_order_at(0), 2);
        assert!(matches!(act.stabilizer_order("nope"), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn permutation_projectivity_examples() {
        let z2 = GroupTable::cyclic(2);
        let f2 = FieldSpec::new(2).unwrap();
        let f3 = FieldSpec::new(3).unwrap();
        assert!(GroupAction::regular(&z2).permutation_module_projective(f2).projective);
        let bad = GroupAction::trivial_point(&z2).permutation_module_projective(f2);
        assert!(!bad.projective);
        assert_eq!(bad.offending[0].stabilizer_order, 2);
        assert!(GroupAction::trivial_point(&z2).permutation_module_projective(f3).projective);
    }

    #[test]
    fn action_json_roundtrip() {
        let text = r#"{"group":{"elements":["e","g"],"identity":"e",
            "table":[["e","e","e"],["e","g","g"],["g","e","g"],["g","g","e"]]},
            "set":["p","q"],"act":[["e","p","p"],["e","q","q"],["g","p","q"],["g","q","p"]]}"#;
        let a = GroupAction::from_json(text).unwrap();
        assert_eq!(a.stabilizer_order("p").unwrap(), 1);
        let broken = text.replace(r#"["g","q","p"]"#, r#"["g","q","q"]"#);
        assert!(GroupAction::from_json(&broken).is_err());
    }

    #[test]
    fn orbit_stabilizer() {
        let s3 = GroupTable::symmetric3();
        for sub in s3.subgroups() {
            let a = GroupAction::cosets(&s3, &sub);
            for x in 0..a.set().len() {
                assert_eq!(a.orbit(x).len() * a.stabilizer_order_at(x), s3.order());
            }
        }
    }
}
