//! The category algebra as an upper triangular matrix algebra.
//!
//! With objects in admissible order, `kC` is the algebra of upper triangular
//! matrices whose diagonal entry `i` is the group algebra `R_i = kAut(x_i)`
//! and whose entry `(i, j)` is the bimodule `M_ij = kHom(x_j, x_i)`. Left
//! modules are column modules: a vector space `X_i` per object and a linear
//! map `X_l → X_j` per morphism `x_l → x_j`, compatible with composition.
//! Indices in the public API are 1-based, matching vertex numbering.

use serde::Serialize;

use crate::category::{MorId, Presentation};
use crate::error::{Error, Result};
use crate::freeness::{unfactorizables, UnfactorizableTable};
use crate::group::{is_projective_over, GroupTable};
use crate::linalg::{Field, Matrix, Quotient, Subspace};
use crate::oracle::{FiniteDimAlgebra, ModuleRep};

#[derive(Debug, Clone)]
pub struct TriangularPresentation<F: Field> {
    field: F,
    presentation: Presentation,
    /// Basis in block order: for `i ≤ j`, the morphisms `x_j → x_i`.
    order: Vec<MorId>,
    /// Morphism id → basis index.
    position: Vec<usize>,
    algebra: FiniteDimAlgebra<F>,
}

pub fn build_triangular<F: Field>(p: &Presentation, field: &F) -> TriangularPresentation<F> {
    let n = p.n();
    let mut order = Vec::new();
    for i in 0..n {
        for j in i..n {
            order.extend_from_slice(p.hom(j, i));
        }
    }
    let mut position = vec![0; order.len()];
    for (k, f) in order.iter().enumerate() {
        position[f.0] = k;
    }
    let d = order.len();
    let mut products = vec![Vec::new(); d * d];
    for (a, &f) in order.iter().enumerate() {
        for (b, &g) in order.iter().enumerate() {
            if let Some(h) = p.compose(f, g) {
                products[a * d + b] = vec![(position[h.0], field.one())];
            }
        }
    }
    let unit_vec = |ks: &[usize]| {
        let mut v = vec![field.zero(); d];
        for &k in ks {
            v[k] = field.one();
        }
        v
    };
    let ids: Vec<usize> = (0..n).map(|i| position[p.category().identity(p.object(i)).0]).collect();
    let unit = unit_vec(&ids);
    let idempotents = ids.iter().map(|&k| unit_vec(&[k])).collect();
    let labels = order.iter().map(|&f| p.name(f).to_string()).collect();
    let algebra = FiniteDimAlgebra::from_parts_unchecked(field, labels, products, unit, idempotents);
    TriangularPresentation { field: field.clone(), presentation: p.clone(), order, position, algebra }
}

/// A left module given by one space per object and one map per morphism.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnModule<F: Field> {
    pub dims: Vec<usize>,
    /// Indexed by morphism id: the map `X_src → X_dst`.
    pub maps: Vec<Matrix<F>>,
}

impl<F: Field> ColumnModule<F> {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Per-`t` comparison of the projective cover of `M_t^*` with `M_t^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MStarEntry {
    pub t: usize,
    pub phi_domain_dim: usize,
    pub mstar_dim: usize,
    pub projective: bool,
}

impl<F: Field> TriangularPresentation<F> {
    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn n(&self) -> usize {
        self.presentation.n()
    }

    /// `Γ_C`, basis in block order.
    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }

    pub fn basis_order(&self) -> &[MorId] {
        &self.order
    }

    pub fn basis_index(&self, f: MorId) -> usize {
        self.position[f.0]
    }

    /// `dim R_i` for each vertex.
    pub fn vertex_dims(&self) -> Vec<usize> {
        (0..self.n()).map(|i| self.presentation.aut(i).order()).collect()
    }

    /// `(i, j, dim M_ij)` for `i < j`, 1-based.
    pub fn bimodule_dims(&self) -> Vec<(usize, usize, usize)> {
        let n = self.n();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| (i + 1, j + 1, self.presentation.hom(j, i).len()))
            .collect()
    }

    pub fn vertex_algebra(&self, i: usize) -> FiniteDimAlgebra<F> {
        FiniteDimAlgebra::group_algebra(&self.field, self.presentation.aut(i - 1))
    }

    /// `(γ β) α = γ (β α)` on every composable triple of basis morphisms.
    pub fn check_psi_associativity(&self) -> Result<()> {
        let p = &self.presentation;
        let c = p.category();
        for f in c.morphism_ids() {
            for g in c.morphism_ids() {
                let Some(fg) = c.compose(f, g) else { continue };
                for h in c.morphism_ids() {
                    let Some(gh) = c.compose(g, h) else { continue };
                    if c.compose(fg, h) != c.compose(f, gh) {
                        return Err(Error::AssociativityFailure(format!(
                            "{}, {}, {}",
                            p.name(f),
                            p.name(g),
                            p.name(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_index(&self, t: usize, max: usize) -> Result<usize> {
        if t == 0 || t > max {
            return Err(Error::IndexOutOfRange { index: t, max });
        }
        Ok(t - 1)
    }

    /// Matrix of `s ↦ γ ∘ s` from `kHom(x_a, x_l)` to `kHom(x_a, x_j)`, for
    /// `γ: x_l → x_j`.
    fn post_compose(&self, gamma: MorId, a: usize) -> Matrix<F> {
        let p = &self.presentation;
        let (l, j) = (p.src_pos(gamma), p.dst_pos(gamma));
        let (from, to) = (p.hom(a, l), p.hom(a, j));
        let mut m = Matrix::zeros(&self.field, to.len(), from.len());
        for (col, &s) in from.iter().enumerate() {
            let image = p.compose(gamma, s).expect("composable");
            let row = to.iter().position(|&x| x == image).expect("closed");
            m.set(row, col, self.field.one());
        }
        m
    }

    /// Right action of `Aut(x_a)` on `kHom(x_a, x_j)` by precomposition.
    fn right_regular(&self, a: usize, j: usize) -> Vec<Matrix<F>> {
        let p = &self.presentation;
        let set = p.hom(a, j);
        p.aut_morphisms(a)
            .iter()
            .map(|&h| {
                let mut m = Matrix::zeros(&self.field, set.len(), set.len());
                for (col, &s) in set.iter().enumerate() {
                    let image = p.compose(s, h).expect("composable");
                    let row = set.iter().position(|&x| x == image).expect("closed");
                    m.set(row, col, self.field.one());
                }
                m
            })
            .collect()
    }

    /// Turn a column module into a module over `Γ_C`.
    pub fn column_to_rep(&self, x: &ColumnModule<F>) -> Result<ModuleRep<F>> {
        self.check_column(x)?;
        let f = &self.field;
        let p = &self.presentation;
        let mut offsets = Vec::with_capacity(x.dims.len());
        let mut total = 0;
        for &d in &x.dims {
            offsets.push(total);
            total += d;
        }
        let actions = self
            .order
            .iter()
            .map(|&gamma| {
                let (l, j) = (p.src_pos(gamma), p.dst_pos(gamma));
                let block = &x.maps[gamma.0];
                let mut m = Matrix::zeros(f, total, total);
                for r in 0..block.rows() {
                    for c in 0..block.cols() {
                        m.set(offsets[j] + r, offsets[l] + c, block.get(r, c).clone());
                    }
                }
                m
            })
            .collect();
        ModuleRep::new(total, actions)
    }

    /// Shapes, identities and `X(f ∘ g) = X(f) X(g)`.
    pub fn check_column(&self, x: &ColumnModule<F>) -> Result<()> {
        let p = &self.presentation;
        let c = p.category();
        if x.dims.len() != self.n() || x.maps.len() != c.num_morphisms() {
            return Err(Error::IncompatibleMaps("column module has the wrong number of parts".into()));
        }
        for f in c.morphism_ids() {
            let m = &x.maps[f.0];
            if m.rows() != x.dims[p.dst_pos(f)] || m.cols() != x.dims[p.src_pos(f)] {
                return Err(Error::IncompatibleMaps(format!("map of {} has the wrong shape", p.name(f))));
            }
            if c.is_identity(f) && *m != Matrix::identity(&self.field, x.dims[p.src_pos(f)]) {
                return Err(Error::IncompatibleMaps(format!("{} does not act as the identity", p.name(f))));
            }
        }
        for f in c.morphism_ids() {
            for g in c.morphism_ids() {
                if let Some(h) = c.compose(f, g) {
                    if x.maps[f.0].mul(&x.maps[g.0]) != x.maps[h.0] {
                        return Err(Error::IncompatibleMaps(format!(
                            "maps of {} and {} do not compose to {}",
                            p.name(f),
                            p.name(g),
                            p.name(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Γ` as the sum of its columns; `column(t)` is the projective `Γ e_t`.
    pub fn column(&self, t: usize) -> Result<ColumnModule<F>> {
        let t = self.check_index(t, self.n())?;
        let a = self.presentation.aut(t);
        Ok(self.induce_at(t, &self.regular_rep(a)))
    }

    fn regular_rep(&self, g: &GroupTable) -> ModuleRep<F> {
        FiniteDimAlgebra::group_algebra(&self.field, g).regular_module()
    }

    /// The trivial module `k` over `R_t`.
    pub fn trivial_rep(&self, t: usize) -> ModuleRep<F> {
        let g = self.presentation.aut(t - 1);
        let one = Matrix::identity(&self.field, 1);
        ModuleRep::new(1, vec![one; g.order()]).expect("trivial module")
    }

    /// `R_t` as a left module over itself.
    pub fn regular_vertex_rep(&self, t: usize) -> ModuleRep<F> {
        self.regular_rep(self.presentation.aut(t - 1))
    }

    /// `Hom_k(R_t, k)` with `(g φ)(r) = φ(r g)`.
    pub fn dual_vertex_rep(&self, t: usize) -> ModuleRep<F> {
        let a = self.vertex_algebra(t);
        let actions = (0..a.dim()).map(|g| a.right_matrix(&a.basis_vector(g)).transpose()).collect();
        ModuleRep::new(a.dim(), actions).expect("dual module")
    }

    /// `i_t(A)`: component `j` is `kHom(x_t, x_j) ⊗_{R_t} A` for `j ≤ t`, zero after.
    pub fn build_i_t(&self, t: usize, a: &ModuleRep<F>) -> Result<ColumnModule<F>> {
        let t = self.check_index(t, self.n())?;
        if a.actions().len() != self.presentation.aut(t).order() {
            return Err(Error::Shape("module is not over the vertex group algebra".into()));
        }
        Ok(self.induce_at(t, a))
    }

    fn tensor_quotient(&self, t: usize, j: usize, a: &ModuleRep<F>) -> Quotient<F> {
        let right = self.right_regular(t, j);
        Quotient::new(tensor_relations(&self.field, &right, a, self.presentation.hom(t, j).len()))
    }

    fn induce_at(&self, t: usize, a: &ModuleRep<F>) -> ColumnModule<F> {
        let p = &self.presentation;
        let n = self.n();
        let quotients: Vec<Option<Quotient<F>>> =
            (0..n).map(|j| (j <= t).then(|| self.tensor_quotient(t, j, a))).collect();
        let dims = quotients.iter().map(|q| q.as_ref().map_or(0, Quotient::dim)).collect::<Vec<_>>();
        let maps = p
            .category()
            .morphism_ids()
            .map(|gamma| {
                let (l, j) = (p.src_pos(gamma), p.dst_pos(gamma));
                match (&quotients[l], &quotients[j]) {
                    (Some(ql), Some(qj)) => {
                        let lifted = kron(&self.post_compose(gamma, t), &Matrix::identity(&self.field, a.dim()));
                        ql.induced(&lifted, qj)
                    }
                    _ => Matrix::zeros(&self.field, dims[j], dims[l]),
                }
            })
            .collect();
        ColumnModule { dims, maps }
    }

    /// `j_t(A)`: component `l` is `Hom_{R_t}(kHom(x_l, x_t), A)` for `l ≥ t`, zero before.
    pub fn build_j_t(&self, t: usize, a: &ModuleRep<F>) -> Result<ColumnModule<F>> {
        let t = self.check_index(t, self.n())?;
        let p = &self.presentation;
        if a.actions().len() != p.aut(t).order() {
            return Err(Error::Shape("module is not over the vertex group algebra".into()));
        }
        let f = &self.field;
        let n = self.n();
        let da = a.dim();
        // Hom_{R_t}(kS, A) inside A^{|S|}: φ(g ∘ s) = g φ(s).
        let spaces: Vec<Option<Subspace<F>>> = (0..n)
            .map(|l| {
                (l >= t).then(|| {
                    let set = p.hom(l, t);
                    let width = set.len() * da;
                    let mut rows = Vec::new();
                    for (gi, &g) in p.aut_morphisms(t).iter().enumerate() {
                        for (si, &s) in set.iter().enumerate() {
                            let gs = set.iter().position(|&x| Some(x) == p.compose(g, s)).expect("closed");
                            for r in 0..da {
                                let mut row = vec![f.zero(); width];
                                row[gs * da + r] = f.add(&row[gs * da + r], &f.one());
                                for c in 0..da {
                                    let v = a.action(gi).get(r, c);
                                    row[si * da + c] = f.sub(&row[si * da + c], v);
                                }
                                rows.push(row);
                            }
                        }
                    }
                    if rows.is_empty() {
                        Subspace::full(f, width)
                    } else {
                        Subspace::kernel(&Matrix::from_rows(f, rows).expect("rectangular"))
                    }
                })
            })
            .collect();
        let dims: Vec<usize> = spaces.iter().map(|s| s.as_ref().map_or(0, Subspace::dim)).collect();
        let maps = p
            .category()
            .morphism_ids()
            .map(|gamma| {
                let (l, j) = (p.src_pos(gamma), p.dst_pos(gamma));
                match (&spaces[l], &spaces[j]) {
                    (Some(sl), Some(sj)) => {
                        // (γ φ)(s) = φ(s ∘ γ) for s: x_j → x_t.
                        let (from, to) = (p.hom(l, t), p.hom(j, t));
                        let cols: Vec<Vec<F::Elem>> = sl
                            .basis()
                            .iter()
                            .map(|phi| {
                                let mut v = Vec::with_capacity(to.len() * da);
                                for &s in to {
                                    let sg = p.compose(s, gamma).expect("composable");
                                    let k = from.iter().position(|&x| x == sg).expect("closed");
                                    v.extend_from_slice(&phi[k * da..(k + 1) * da]);
                                }
                                sj.coordinates_unchecked(&v)
                            })
                            .collect();
                        Matrix::from_columns(f, sj.dim(), &cols)
                    }
                    _ => Matrix::zeros(f, dims[j], dims[l]),
                }
            })
            .collect();
        Ok(ColumnModule { dims, maps })
    }

    /// The presentation of `Γ_t`, the leading `t` vertices.
    pub fn leading(&self, t: usize) -> Result<TriangularPresentation<F>> {
        self.check_index(t, self.n())?;
        let (sub, _) = self.presentation.leading(t);
        Ok(build_triangular(&sub, &self.field))
    }

    /// `M_t^*` over `Γ_t`: component `i ≤ t` is `kHom(x_{t+1}, x_i)`.
    pub fn build_m_star(&self, t: usize) -> Result<(TriangularPresentation<F>, ColumnModule<F>)> {
        if self.n() < 2 {
            return Err(Error::IndexOutOfRange { index: t, max: 0 });
        }
        self.check_index(t, self.n() - 1)?;
        let (sub, back) = self.presentation.leading(t);
        let gamma_t = build_triangular(&sub, &self.field);
        let dims = (0..t).map(|i| self.presentation.hom(t, i).len()).collect();
        let maps = back.iter().map(|&gamma| self.post_compose(gamma, t)).collect();
        Ok((gamma_t, ColumnModule { dims, maps }))
    }

    /// `Σ_{l ≤ t} dim i_l(M⁰_{l,t+1})` over `Γ_t`: the dimension of the
    /// projective cover of `M_t^*` assembled from its unfactorizable part.
    pub fn phi_domain_dim(&self, table: &UnfactorizableTable, t: usize) -> Result<usize> {
        if self.n() < 2 {
            return Err(Error::IndexOutOfRange { index: t, max: 0 });
        }
        self.check_index(t, self.n() - 1)?;
        let p = &self.presentation;
        let mut total = 0;
        for l in 0..t {
            let unf = table.get(t, l);
            if unf.is_empty() {
                continue;
            }
            let a = self.unfactorizable_rep(l, unf);
            // i_l over Γ_t only has components j ≤ l < t.
            for j in 0..=l {
                let right = self.right_regular(l, j);
                total += p.hom(l, j).len() * a.dim()
                    - tensor_relations(&self.field, &right, &a, p.hom(l, j).len()).dim();
            }
        }
        Ok(total)
    }

    /// `kHom⁰(x_t, x_l)` as a left `R_l`-module.
    fn unfactorizable_rep(&self, l: usize, unf: &[MorId]) -> ModuleRep<F> {
        let p = &self.presentation;
        let actions = p
            .aut_morphisms(l)
            .iter()
            .map(|&g| {
                let mut m = Matrix::zeros(&self.field, unf.len(), unf.len());
                for (col, &s) in unf.iter().enumerate() {
                    let image = p.compose(g, s).expect("composable");
                    let row = unf.iter().position(|&x| x == image).expect("closed under automorphisms");
                    m.set(row, col, self.field.one());
                }
                m
            })
            .collect();
        ModuleRep::new(unf.len(), actions).expect("permutation module")
    }

    /// Whether `M_t^*` is projective, by comparing it with its projective
    /// cover. Requires the category to be projective over the field.
    pub fn is_mstar_projective(&self, table: &UnfactorizableTable, t: usize) -> Result<bool> {
        if !is_projective_over(&self.presentation, self.field.spec()).projective {
            return Err(Error::HypothesisViolated(
                "the category is not projective over the field".into(),
            ));
        }
        Ok(self.mstar_entry(table, t)?.projective)
    }

    pub fn mstar_entry(&self, table: &UnfactorizableTable, t: usize) -> Result<MStarEntry> {
        let phi = self.phi_domain_dim(table, t)?;
        let mstar: usize = (0..t).map(|i| self.presentation.hom(t, i).len()).sum();
        Ok(MStarEntry { t, phi_domain_dim: phi, mstar_dim: mstar, projective: phi == mstar })
    }

    /// One entry per `t = 1..n-1`.
    pub fn mstar_ledger(&self) -> Vec<MStarEntry> {
        let table = unfactorizables(&self.presentation);
        (1..self.n()).map(|t| self.mstar_entry(&table, t).expect("index in range")).collect()
    }
}

/// Relations `m g ⊗ a − m ⊗ g a` inside `M ⊗_k A`, where `M` has dimension
/// `m_dim` and `right[g]` is the right action of the `g`-th basis element.
fn tensor_relations<F: Field>(f: &F, right: &[Matrix<F>], a: &ModuleRep<F>, m_dim: usize) -> Subspace<F> {
    let da = a.dim();
    let mut rel = Subspace::zero(f, m_dim * da);
    for (g, rg) in right.iter().enumerate() {
        let lg = a.action(g);
        for s in 0..m_dim {
            for b in 0..da {
                if rel.dim() == m_dim * da {
                    return rel;
                }
                let mut v = vec![f.zero(); m_dim * da];
                for s2 in 0..m_dim {
                    let c = rg.get(s2, s);
                    if !f.is_zero(c) {
                        v[s2 * da + b] = f.add(&v[s2 * da + b], c);
                    }
                }
                for b2 in 0..da {
                    let c = lg.get(b2, b);
                    if !f.is_zero(c) {
                        v[s * da + b2] = f.sub(&v[s * da + b2], c);
                    }
                }
                rel.insert(v);
            }
        }
    }
    rel
}

/// `dim M ⊗_R N` for a right module `M` (one matrix per basis element of
/// `R`, acting on column vectors) and a left module `N`.
pub fn tensor_dim<F: Field>(f: &F, right: &[Matrix<F>], n: &ModuleRep<F>) -> usize {
    let m_dim = right.first().map_or(0, Matrix::rows);
    m_dim * n.dim() - tensor_relations(f, right, n, m_dim).dim()
}

/// Kronecker product `a ⊗ b`.
fn kron<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let f = a.field();
    let mut m = Matrix::zeros(f, a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if f.is_zero(x) {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    m.set(i * b.rows() + k, j * b.cols() + l, f.mul(x, b.get(k, l)));
                }
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{validate, RawCategory, RawMorphism};
    use crate::linalg::{PrimeField, Rationals};

    fn raw_mor(id: &str, s: &str, d: &str, identity: bool) -> RawMorphism {
        RawMorphism { id: id.into(), src: s.into(), dst: d.into(), identity }
    }

    fn chain() -> Presentation {
        let raw = RawCategory {
            objects: vec!["x".into(), "y".into(), "z".into()],
            morphisms: vec![
                raw_mor("1x", "x", "x", true),
                raw_mor("1y", "y", "y", true),
                raw_mor("1z", "z", "z", true),
                raw_mor("a", "x", "y", false),
                raw_mor("b", "y", "z", false),
                raw_mor("c", "x", "z", false),
            ],
            composition: vec![["b".into(), "a".into(), "c".into()]],
        };
        validate(&raw).unwrap().present().unwrap()
    }

    /// Two objects, `Aut(x_2) = Z/2`, and `Hom(x_2, x_1)` either the regular
    /// orbit `{α, α∘g}` or the single stabilized `α`.
    fn two_object(regular: bool) -> Presentation {
        let mut morphisms = vec![
            raw_mor("1a", "a", "a", true),
            raw_mor("1b", "b", "b", true),
            raw_mor("g", "b", "b", false),
            raw_mor("alpha", "b", "a", false),
        ];
        let mut composition = vec![["g".to_string(), "g".into(), "1b".into()]];
        if regular {
            morphisms.push(raw_mor("alpha_g", "b", "a", false));
            composition.push(["alpha".into(), "g".into(), "alpha_g".into()]);
            composition.push(["alpha_g".into(), "g".into(), "alpha".into()]);
        } else {
            composition.push(["alpha".into(), "g".into(), "alpha".into()]);
        }
        let raw = RawCategory { objects: vec!["a".into(), "b".into()], morphisms, composition };
        validate(&raw).unwrap().present().unwrap()
    }

    #[test]
    fn block_dimensions() {
        let tp = build_triangular(&chain(), &Rationals);
        assert_eq!(tp.vertex_dims(), vec![1, 1, 1]);
        assert_eq!(tp.bimodule_dims(), vec![(1, 2, 1), (1, 3, 1), (2, 3, 1)]);
        assert_eq!(tp.algebra().dim(), 6);
        tp.algebra().check_associativity().unwrap();
        tp.check_psi_associativity().unwrap();
        let orbit = build_triangular(&two_object(true), &Rationals);
        assert_eq!(orbit.vertex_dims(), vec![1, 2]);
        assert_eq!(orbit.bimodule_dims(), vec![(1, 2, 2)]);
        assert_eq!(orbit.algebra().dim(), 5);
    }

    #[test]
    fn tensor_dimensions() {
        let f = PrimeField::new(2).unwrap();
        let g = GroupTable::cyclic(2);
        let r = FiniteDimAlgebra::group_algebra(&f, &g);
        let right: Vec<_> = (0..2).map(|k| r.right_matrix(&r.basis_vector(k))).collect();
        assert_eq!(tensor_dim(&f, &right, &r.regular_module()), 2);
        let trivial = ModuleRep::new(1, vec![Matrix::identity(&f, 1); 2]).unwrap();
        let trivial_right = vec![Matrix::identity(&f, 1); 2];
        assert_eq!(tensor_dim(&f, &trivial_right, &trivial), 1);
        // Free right module of rank 2.
        let free: Vec<_> = right
            .iter()
            .map(|m| {
                let z = Matrix::zeros(&f, 2, 2);
                m.hstack(&z).vstack(&z.hstack(m))
            })
            .collect();
        assert_eq!(tensor_dim(&f, &free, &trivial), 2);
    }

    #[test]
    fn induced_and_coinduced_dimensions() {
        let tp = build_triangular(&chain(), &Rationals);
        let k = tp.trivial_rep(2);
        let i2 = tp.build_i_t(2, &k).unwrap();
        assert_eq!(i2.dims, vec![1, 1, 0]);
        let j2 = tp.build_j_t(2, &k).unwrap();
        assert_eq!(j2.dims, vec![0, 1, 1]);
        tp.column_to_rep(&i2).unwrap().check(tp.algebra()).unwrap();
        tp.column_to_rep(&j2).unwrap().check(tp.algebra()).unwrap();
        let col = tp.column(3).unwrap();
        assert_eq!(col.dims, vec![1, 1, 1]);
        assert!(matches!(tp.build_i_t(4, &k), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn regular_module_is_the_sum_of_columns() {
        let tp = build_triangular(&two_object(true), &PrimeField::new(2).unwrap());
        let total: usize = (1..=2).map(|t| tp.column(t).unwrap().dim()).sum();
        assert_eq!(total, tp.algebra().dim());
    }

    #[test]
    fn mstar_chain() {
        let p = chain();
        let tp = build_triangular(&p, &Rationals);
        let table = unfactorizables(&p);
        let (gamma2, m) = tp.build_m_star(2).unwrap();
        assert_eq!(m.dims, vec![1, 1]);
        gamma2.column_to_rep(&m).unwrap().check(gamma2.algebra()).unwrap();
        assert_eq!(tp.phi_domain_dim(&table, 2).unwrap(), 2);
        assert!(tp.is_mstar_projective(&table, 2).unwrap());
        assert!(tp.is_mstar_projective(&table, 1).unwrap());
    }

    #[test]
    fn mstar_requires_projective_category() {
        let p = two_object(false);
        let tp = build_triangular(&p, &PrimeField::new(2).unwrap());
        let table = unfactorizables(&p);
        assert!(matches!(tp.is_mstar_projective(&table, 1), Err(Error::HypothesisViolated(_))));
        let tp3 = build_triangular(&p, &PrimeField::new(3).unwrap());
        assert!(tp3.is_mstar_projective(&table, 1).unwrap());
        let one = build_triangular(&p.leading(1).0, &Rationals);
        assert!(matches!(one.build_m_star(1), Err(Error::IndexOutOfRange { .. })));
    }
}
