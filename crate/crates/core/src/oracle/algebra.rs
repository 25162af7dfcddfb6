//! Finite-dimensional algebras by structure constants, and modules over them
//! as action matrices.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::category::FiniteCategory;
use crate::error::{Error, Result};
use crate::exec::par_map_range;
use crate::group::GroupTable;
use crate::linalg::{Field, Matrix, Quotient, Subspace};

/// Sparse product of two basis elements: `(k, c)` pairs with `c ≠ 0`.
pub type Product<F> = Vec<(usize, <F as Field>::Elem)>;

#[derive(Debug, Clone)]
pub struct FiniteDimAlgebra<F: Field> {
    field: F,
    labels: Vec<String>,
    /// `products[i * d + j] = b_i b_j`
    products: Vec<Product<F>>,
    unit: Vec<F::Elem>,
    /// Orthogonal idempotents summing to the unit. Resolutions cover modules
    /// by sums of the projectives `A e`.
    idempotents: Vec<Vec<F::Elem>>,
}

/// Structure-constant JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureJson {
    pub basis: Vec<String>,
    pub unit: Vec<Value>,
    /// `[i, j, [[k, c], …]]` meaning `b_i b_j = Σ c b_k`; omitted pairs multiply to zero.
    pub table: Vec<(usize, usize, Vec<(usize, Value)>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<Value>>>,
}

impl<F: Field> FiniteDimAlgebra<F> {
    /// Build and check associativity, the unit laws and the idempotents.
    pub fn new(
        field: &F,
        labels: Vec<String>,
        products: Vec<Product<F>>,
        unit: Vec<F::Elem>,
        idempotents: Option<Vec<Vec<F::Elem>>>,
    ) -> Result<Self> {
        let d = labels.len();
        if products.len() != d * d || unit.len() != d {
            return Err(Error::InvalidAlgebra("structure constants have the wrong shape".into()));
        }
        if products.iter().flatten().any(|(k, _)| *k >= d) {
            return Err(Error::InvalidAlgebra("basis index out of range".into()));
        }
        let products = products
            .into_iter()
            .map(|p| normalize(field, p))
            .collect();
        let idempotents = idempotents.unwrap_or_else(|| vec![unit.clone()]);
        let a = FiniteDimAlgebra { field: field.clone(), labels, products, unit, idempotents };
        a.check_associativity()?;
        a.check_unit()?;
        a.check_idempotents()?;
        Ok(a)
    }

    /// The category algebra: basis the morphisms, product composition or 0,
    /// unit the sum of identities.
    pub fn from_category(field: &F, c: &FiniteCategory) -> Self {
        let d = c.num_morphisms();
        let mut products = vec![Vec::new(); d * d];
        for f in c.morphism_ids() {
            for g in c.morphism_ids() {
                if let Some(h) = c.compose(f, g) {
                    products[f.0 * d + g.0] = vec![(h.0, field.one())];
                }
            }
        }
        let basis_vec = |k: usize| {
            let mut v = vec![field.zero(); d];
            v[k] = field.one();
            v
        };
        let mut unit = vec![field.zero(); d];
        let mut idempotents = Vec::new();
        for x in c.object_ids() {
            let id = c.identity(x).0;
            unit[id] = field.one();
            idempotents.push(basis_vec(id));
        }
        let labels = c.morphisms().iter().map(|m| m.name.clone()).collect();
        FiniteDimAlgebra { field: field.clone(), labels, products, unit, idempotents }
    }

    pub fn group_algebra(field: &F, g: &GroupTable) -> Self {
        let n = g.order();
        let products = (0..n * n).map(|k| vec![(g.mul(k / n, k % n), field.one())]).collect();
        let mut unit = vec![field.zero(); n];
        unit[g.identity()] = field.one();
        FiniteDimAlgebra {
            field: field.clone(),
            labels: g.names().to_vec(),
            products,
            idempotents: vec![unit.clone()],
            unit,
        }
    }

    pub(crate) fn from_parts_unchecked(
        field: &F,
        labels: Vec<String>,
        products: Vec<Product<F>>,
        unit: Vec<F::Elem>,
        idempotents: Vec<Vec<F::Elem>>,
    ) -> Self {
        FiniteDimAlgebra { field: field.clone(), labels, products, unit, idempotents }
    }

    pub fn from_json(field: &F, text: &str) -> Result<Self> {
        let json: StructureJson = serde_json::from_str(text)?;
        Self::from_json_value(field, &json)
    }

    pub fn from_json_value(field: &F, json: &StructureJson) -> Result<Self> {
        let d = json.basis.len();
        let scalars = |v: &[Value]| v.iter().map(|x| field.from_json(x)).collect::<Result<Vec<_>>>();
        let unit = scalars(&json.unit)?;
        let mut products = vec![Vec::new(); d * d];
        for (i, j, terms) in &json.table {
            if *i >= d || *j >= d {
                return Err(Error::InvalidAlgebra(format!("basis index ({i}, {j}) out of range")));
            }
            for (k, c) in terms {
                products[i * d + j].push((*k, field.from_json(c)?));
            }
        }
        let idempotents = match &json.idempotents {
            Some(list) => Some(list.iter().map(|e| scalars(e)).collect::<Result<Vec<_>>>()?),
            None => None,
        };
        Self::new(field, json.basis.clone(), products, unit, idempotents)
    }

    pub fn to_json_value(&self) -> StructureJson {
        let f = &self.field;
        let d = self.dim();
        let table = (0..d * d)
            .filter(|&k| !self.products[k].is_empty())
            .map(|k| {
                let terms = self.products[k].iter().map(|(m, c)| (*m, f.to_json(c))).collect();
                (k / d, k % d, terms)
            })
            .collect();
        let idempotents = (self.idempotents.len() > 1 || self.idempotents[0] != self.unit)
            .then(|| self.idempotents.iter().map(|e| e.iter().map(|x| f.to_json(x)).collect()).collect());
        StructureJson {
            basis: self.labels.clone(),
            unit: self.unit.iter().map(|x| f.to_json(x)).collect(),
            table,
            idempotents,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<F::Elem>] {
        &self.idempotents
    }

    /// `b_i b_j`, sparse.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.products[i * self.dim() + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let ab = f.mul(a, b);
                for (k, c) in self.product(i, j) {
                    f.add_mul_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x y`.
    pub fn left_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of `y ↦ y x`.
    pub fn right_matrix(&self, x: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<_> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Same basis, product reversed.
    pub fn opposite(&self) -> Self {
        let d = self.dim();
        let products = (0..d * d).map(|k| self.products[(k % d) * d + k / d].clone()).collect();
        FiniteDimAlgebra {
            field: self.field.clone(),
            labels: self.labels.clone(),
            products,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
        }
    }

    /// `(b_i b_j) b_k = b_i (b_j b_k)` on every basis triple.
    pub fn check_associativity(&self) -> Result<()> {
        let d = self.dim();
        let f = &self.field;
        let bad = par_map_range(d, |i| {
            for j in 0..d {
                for k in 0..d {
                    let mut left = vec![f.zero(); d];
                    for (m, c) in self.product(i, j) {
                        for (n, e) in self.product(*m, k) {
                            f.add_mul_assign(&mut left[*n], c, e);
                        }
                    }
                    let mut right = vec![f.zero(); d];
                    for (m, c) in self.product(j, k) {
                        for (n, e) in self.product(i, *m) {
                            f.add_mul_assign(&mut right[*n], c, e);
                        }
                    }
                    if left != right {
                        return Some((i, j, k));
                    }
                }
            }
            None
        });
        match bad.into_iter().flatten().next() {
            None => Ok(()),
            Some((i, j, k)) => Err(Error::InvalidAlgebra(format!(
                "not associative on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            ))),
        }
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra(format!("unit does not fix {}", self.labels[i])));
            }
        }
        Ok(())
    }

    fn check_idempotents(&self) -> Result<()> {
        let f = &self.field;
        let mut sum = vec![f.zero(); self.dim()];
        for (a, e) in self.idempotents.iter().enumerate() {
            if e.len() != self.dim() {
                return Err(Error::InvalidAlgebra("idempotent has the wrong length".into()));
            }
            for (s, x) in sum.iter_mut().zip(e) {
                *s = f.add(s, x);
            }
            for (b, g) in self.idempotents.iter().enumerate() {
                let eg = self.mul(e, g);
                let expected = if a == b { e.clone() } else { vec![f.zero(); self.dim()] };
                if eg != expected {
                    return Err(Error::InvalidAlgebra("idempotents are not orthogonal idempotents".into()));
                }
            }
        }
        if sum != self.unit {
            return Err(Error::InvalidAlgebra("idempotents do not sum to the unit".into()));
        }
        Ok(())
    }

    /// The algebra acting on itself by left multiplication.
    pub fn regular_module(&self) -> ModuleRep<F> {
        let actions = (0..self.dim()).map(|i| self.left_matrix(&self.basis_vector(i))).collect();
        ModuleRep { dim: self.dim(), actions }
    }

    /// Products `x y` with `x` ranging over `left` and `y` over `right`, spanned.
    pub fn product_span(&self, left: &[Vec<F::Elem>], right: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut s = Subspace::zero(&self.field, self.dim());
        for x in left {
            for y in right {
                if s.dim() == self.dim() {
                    return s;
                }
                s.insert(self.mul(x, y));
            }
        }
        s
    }
}

fn normalize<F: Field>(f: &F, terms: Product<F>) -> Product<F> {
    let mut out: Product<F> = Vec::new();
    for (k, c) in terms {
        match out.iter_mut().find(|(m, _)| *m == k) {
            Some((_, acc)) => *acc = f.add(acc, &c),
            None => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !f.is_zero(c));
    out.sort_by_key(|(k, _)| *k);
    out
}

/// A left module: one action matrix per algebra basis element.
#[derive(Debug, Clone, PartialEq)]
pub struct ModuleRep<F: Field> {
    dim: usize,
    actions: Vec<Matrix<F>>,
}

impl<F: Field> ModuleRep<F> {
    pub fn new(dim: usize, actions: Vec<Matrix<F>>) -> Result<Self> {
        if actions.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::Shape("action matrices must be square of the module dimension".into()));
        }
        Ok(ModuleRep { dim, actions })
    }

    pub fn zero(algebra: &FiniteDimAlgebra<F>) -> Self {
        let f = algebra.field();
        ModuleRep { dim: 0, actions: vec![Matrix::zeros(f, 0, 0); algebra.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.actions[i]
    }

    pub fn actions(&self) -> &[Matrix<F>] {
        &self.actions
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, field: &F, x: &[F::Elem]) -> Matrix<F> {
        let mut m = Matrix::zeros(field, self.dim, self.dim);
        for (c, a) in x.iter().zip(&self.actions) {
            if !field.is_zero(c) {
                m.add_scaled(c, a);
            }
        }
        m
    }

    /// Unit acts as the identity and the actions multiply like the basis.
    pub fn check(&self, algebra: &FiniteDimAlgebra<F>) -> Result<()> {
        let f = algebra.field();
        if self.actions.len() != algebra.dim() {
            return Err(Error::Shape("one action matrix per basis element".into()));
        }
        if self.act(f, algebra.unit()) != Matrix::identity(f, self.dim) {
            return Err(Error::IncompatibleMaps("unit does not act as the identity".into()));
        }
        let d = algebra.dim();
        let bad = par_map_range(d, |i| {
            (0..d).find(|&j| {
                let lhs = self.actions[i].mul(&self.actions[j]);
                let mut rhs = Matrix::zeros(f, self.dim, self.dim);
                for (k, c) in algebra.product(i, j) {
                    rhs.add_scaled(c, &self.actions[*k]);
                }
                lhs != rhs
            })
        });
        match bad.iter().enumerate().find_map(|(i, j)| j.map(|j| (i, j))) {
            None => Ok(()),
            Some((i, j)) => Err(Error::IncompatibleMaps(format!(
                "actions of {} and {} do not multiply correctly",
                algebra.labels()[i],
                algebra.labels()[j]
            ))),
        }
    }

    /// `Hom_k(M, k)` as a left module over the opposite algebra.
    pub fn dual(&self) -> Self {
        ModuleRep { dim: self.dim, actions: self.actions.iter().map(Matrix::transpose).collect() }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.actions.first().or(other.actions.first()).map(|m| m.field().clone());
        let Some(f) = f else { return self.clone() };
        let n = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(&f, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        ModuleRep { dim: n, actions }
    }

    /// The submodule generated by `vectors`.
    pub fn submodule(&self, field: &F, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut s = Subspace::spanned_by(field, self.dim, vectors.iter().cloned());
        let mut frontier: Vec<Vec<F::Elem>> = s.basis().to_vec();
        while let Some(v) = frontier.pop() {
            for a in &self.actions {
                let w = a.mul_vec(&v);
                if s.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        s
    }

    /// `M / N` for a submodule `N`.
    pub fn quotient(&self, sub: Subspace<F>) -> Self {
        let q = Quotient::new(sub);
        let actions = self.actions.iter().map(|a| q.induced(a, &q)).collect();
        ModuleRep { dim: q.dim(), actions }
    }

    /// `N` with the restricted actions, in the basis of `sub`.
    pub fn restrict(&self, sub: &Subspace<F>) -> Self {
        let f = sub.field();
        let actions = self
            .actions
            .iter()
            .map(|a| {
                let cols: Vec<_> = sub.basis().iter().map(|v| sub.coordinates_unchecked(&a.mul_vec(v))).collect();
                Matrix::from_columns(f, sub.dim(), &cols)
            })
            .collect();
        ModuleRep { dim: sub.dim(), actions }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    fn z2() -> FiniteDimAlgebra<PrimeField> {
        FiniteDimAlgebra::group_algebra(&PrimeField::new(2).unwrap(), &GroupTable::cyclic(2))
    }

    #[test]
    fn group_algebra_is_valid() {
        let a = z2();
        assert_eq!(a.dim(), 2);
        a.check_associativity().unwrap();
        a.regular_module().check(&a).unwrap();
    }

    #[test]
    fn opposite_is_an_involution() {
        let a = FiniteDimAlgebra::group_algebra(&Rationals, &GroupTable::symmetric3());
        let aa = a.opposite().opposite();
        assert_eq!(aa.products, a.products);
        // S3 is not abelian, so its opposite multiplication differs.
        assert_ne!(a.opposite().products, a.products);
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let f = Rationals;
        let a = FiniteDimAlgebra::group_algebra(&f, &GroupTable::cyclic(3));
        let text = serde_json::to_string(&a.to_json_value()).unwrap();
        let b = FiniteDimAlgebra::from_json(&f, &text).unwrap();
        assert_eq!(b.products, a.products);
        // x·x = x and x·1 = 0 violates the unit law.
        let bad = r#"{"basis":["1","x"],"unit":[1,0],"table":[[0,0,[[0,1]]],[0,1,[[1,1]]],[1,1,[[1,1]]]]}"#;
        assert!(matches!(FiniteDimAlgebra::from_json(&f, bad), Err(Error::InvalidAlgebra(_))));
    }

    #[test]
    fn dual_module_over_opposite() {
        let f = Rationals;
        let a = FiniteDimAlgebra::group_algebra(&f, &GroupTable::symmetric3());
        let m = a.regular_module();
        m.dual().check(&a.opposite()).unwrap();
    }

    #[test]
    fn quotient_by_augmentation_ideal() {
        let a = z2();
        let m = a.regular_module();
        let aug = m.submodule(a.field(), &[vec![1, 1]]);
        assert_eq!(aug.dim(), 1);
        let top = m.quotient(aug);
        assert_eq!(top.dim(), 1);
        top.check(&a).unwrap();
    }
}
