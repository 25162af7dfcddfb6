//! Projective resolutions and Ext.
//!
//! Modules are covered by sums of the projectives `A e`, one for each of the
//! algebra's orthogonal idempotents. A syzygy is never given its own basis:
//! it is kept as a subspace of the projective it lives in, and the algebra
//! acts on that projective block by block. Generators are chosen greedily
//! modulo the radical of the module being covered, which keeps the
//! resolution minimal when the idempotents are primitive.

use crate::exec::par_map_range;
use crate::linalg::{Field, Matrix, Subspace};

use super::algebra::{FiniteDimAlgebra, ModuleRep};

/// Action of one algebra element on an ambient space.
#[derive(Debug, Clone)]
enum Op<F: Field> {
    /// On a module given by action matrices.
    Dense(Matrix<F>),
    /// On a sum of projectives: one matrix per idempotent, applied blockwise.
    Blocks(Vec<Matrix<F>>),
}

/// Block structure of a sum of projectives `⊕ A e_{c_j}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    /// Idempotent index of each summand.
    pub blocks: Vec<usize>,
    offsets: Vec<usize>,
    dim: usize,
}

impl Layout {
    fn new(blocks: Vec<usize>, dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut dim = 0;
        for &c in &blocks {
            offsets.push(dim);
            dim += dims[c];
        }
        Layout { blocks, offsets, dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.blocks.len()
    }
}

impl<F: Field> Op<F> {
    fn apply(&self, layout: Option<&Layout>, v: &[F::Elem]) -> Vec<F::Elem> {
        match self {
            Op::Dense(m) => m.mul_vec(v),
            Op::Blocks(ms) => {
                let layout = layout.expect("block action needs a layout");
                let mut out = Vec::with_capacity(v.len());
                for (&c, &off) in layout.blocks.iter().zip(&layout.offsets) {
                    let m = &ms[c];
                    out.extend(m.mul_vec(&v[off..off + m.cols()]));
                }
                out
            }
        }
    }
}

/// Operators needed to cover submodules of one ambient space.
#[derive(Debug, Clone)]
struct AmbientOps<F: Field> {
    /// `proj[c][m]`: the basis element `u_m` of `A e_c`.
    proj: Vec<Vec<Op<F>>>,
    /// `rad[c][r]`: the basis element `r` of `rad(A) e_c`.
    rad: Vec<Vec<Op<F>>>,
    idem: Vec<Op<F>>,
}

/// The indecomposable-ish projectives `A e_c` of an algebra, with the
/// action of the algebra on each.
#[derive(Debug, Clone)]
pub struct Projectives<F: Field> {
    algebra: FiniteDimAlgebra<F>,
    /// `basis[c]`: basis of `A e_c` as algebra elements.
    basis: Vec<Vec<Vec<F::Elem>>>,
    dims: Vec<usize>,
    rad_parts: Vec<Vec<Vec<F::Elem>>>,
    free_ops: AmbientOps<F>,
}

impl<F: Field> Projectives<F> {
    pub fn new(algebra: &FiniteDimAlgebra<F>, rad: &Subspace<F>) -> Self {
        let f = algebra.field();
        let d = algebra.dim();
        let spaces: Vec<Subspace<F>> = algebra
            .idempotents()
            .iter()
            .map(|e| Subspace::spanned_by(f, d, (0..d).map(|i| algebra.mul(&algebra.basis_vector(i), e))))
            .collect();
        let basis: Vec<Vec<Vec<F::Elem>>> = spaces.iter().map(|s| s.basis().to_vec()).collect();
        let dims: Vec<usize> = basis.iter().map(Vec::len).collect();
        let rad_parts: Vec<Vec<Vec<F::Elem>>> = algebra
            .idempotents()
            .iter()
            .map(|e| {
                let part = Subspace::spanned_by(f, d, rad.basis().iter().map(|r| algebra.mul(r, e)));
                part.basis().to_vec()
            })
            .collect();
        // Action of an element x on A e_c, in the basis of A e_c.
        let on_block = |x: &[F::Elem], c: usize| {
            let cols: Vec<_> = basis[c]
                .iter()
                .map(|u| spaces[c].coordinates_unchecked(&algebra.mul(x, u)))
                .collect();
            Matrix::from_columns(f, dims[c], &cols)
        };
        let n = basis.len();
        let blocks_of = |x: &[F::Elem]| Op::Blocks((0..n).map(|c| on_block(x, c)).collect());
        let free_ops = AmbientOps {
            proj: basis.iter().map(|b| b.iter().map(|u| blocks_of(u)).collect()).collect(),
            rad: rad_parts.iter().map(|b| b.iter().map(|r| blocks_of(r)).collect()).collect(),
            idem: algebra.idempotents().iter().map(|e| blocks_of(e)).collect(),
        };
        Projectives { algebra: algebra.clone(), basis, dims, rad_parts, free_ops }
    }

    pub fn algebra(&self) -> &FiniteDimAlgebra<F> {
        &self.algebra
    }

    /// `dim A e_c` for each idempotent.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn module_ops(&self, m: &ModuleRep<F>) -> AmbientOps<F> {
        let f = self.algebra.field();
        let dense = |x: &[F::Elem]| Op::Dense(m.act(f, x));
        AmbientOps {
            proj: self.basis.iter().map(|b| b.iter().map(|u| dense(u)).collect()).collect(),
            rad: self.rad_parts.iter().map(|b| b.iter().map(|r| dense(r)).collect()).collect(),
            idem: self.algebra.idempotents().iter().map(|e| dense(e)).collect(),
        }
    }
}

/// One degree of a resolution: `P_i = ⊕ A e_{c_j}` and the images of its
/// generators in the previous term (in the module itself for `i = 0`).
#[derive(Debug, Clone)]
pub struct Degree<F: Field> {
    pub layout: Layout,
    pub images: Vec<Vec<F::Elem>>,
    /// Dimension of the module or syzygy covered in this degree.
    pub covered_dim: usize,
}

/// A projective resolution, extended on demand.
#[derive(Debug, Clone)]
pub struct Resolution<'a, F: Field> {
    proj: &'a Projectives<F>,
    module: ModuleRep<F>,
    module_ops: AmbientOps<F>,
    degrees: Vec<Degree<F>>,
    /// The next module to cover, inside the last term (or the module).
    pending: Subspace<F>,
    rotation: usize,
}

impl<'a, F: Field> Resolution<'a, F> {
    pub fn new(proj: &'a Projectives<F>, module: &ModuleRep<F>) -> Self {
        Self::with_rotation(proj, module, 0)
    }

    /// `rotation` cyclically shifts the order in which candidate generators
    /// are tried, giving a different (still valid) resolution.
    pub fn with_rotation(proj: &'a Projectives<F>, module: &ModuleRep<F>, rotation: usize) -> Self {
        let f = proj.algebra.field();
        Resolution {
            proj,
            module: module.clone(),
            module_ops: proj.module_ops(module),
            degrees: Vec::new(),
            pending: Subspace::full(f, module.dim()),
            rotation,
        }
    }

    pub fn projectives(&self) -> &Projectives<F> {
        self.proj
    }

    pub fn module(&self) -> &ModuleRep<F> {
        &self.module
    }

    /// Compute terms up to and including `P_n`.
    pub fn ensure(&mut self, n: usize) {
        while self.degrees.len() <= n {
            self.step();
        }
    }

    /// `P_i`, computing it if needed.
    pub fn degree(&mut self, i: usize) -> &Degree<F> {
        self.ensure(i);
        &self.degrees[i]
    }

    pub fn computed(&self) -> &[Degree<F>] {
        &self.degrees
    }

    /// Number of summands of `P_i`.
    pub fn rank(&mut self, i: usize) -> usize {
        self.degree(i).layout.rank()
    }

    fn step(&mut self) {
        let f = self.proj.algebra.field().clone();
        let (ops, layout) = match self.degrees.last() {
            None => (&self.module_ops, None),
            Some(d) => (&self.proj.free_ops, Some(&d.layout)),
        };
        let kernel = std::mem::replace(&mut self.pending, Subspace::zero(&f, 0));
        let generators = cover(&f, ops, layout, &kernel, self.rotation);
        let new_layout = Layout::new(generators.iter().map(|(c, _)| *c).collect(), &self.proj.dims);
        let images: Vec<Vec<F::Elem>> = generators.into_iter().map(|(_, v)| v).collect();
        let boundary = boundary_matrix(&f, ops, layout, &new_layout, &images, kernel.ambient());
        self.pending = Subspace::kernel(&boundary);
        self.degrees.push(Degree { layout: new_layout, images, covered_dim: kernel.dim() });
    }

    /// `∂_i : P_i → P_{i-1}` (into the module for `i = 0`).
    pub fn boundary(&mut self, i: usize) -> Matrix<F> {
        self.ensure(i);
        let f = self.proj.algebra.field().clone();
        let (ops, layout, ambient) = if i == 0 {
            (&self.module_ops, None, self.module.dim())
        } else {
            let prev = &self.degrees[i - 1].layout;
            (&self.proj.free_ops, Some(prev), prev.dim())
        };
        let d = &self.degrees[i];
        boundary_matrix(&f, ops, layout, &d.layout, &d.images, ambient)
    }
}

/// Generators of the submodule `kernel`, each lying in some `e_c · ambient`,
/// chosen to be independent modulo the radical of `kernel`.
fn cover<F: Field>(
    f: &F,
    ops: &AmbientOps<F>,
    layout: Option<&Layout>,
    kernel: &Subspace<F>,
    rotation: usize,
) -> Vec<(usize, Vec<F::Elem>)> {
    if kernel.dim() == 0 {
        return Vec::new();
    }
    let ambient = kernel.ambient();
    let parts: Vec<Subspace<F>> = ops
        .idem
        .iter()
        .map(|e| Subspace::spanned_by(f, ambient, kernel.basis().iter().map(|w| e.apply(layout, w))))
        .collect();
    // rad(A) K = Σ_c rad(A) e_c · e_c K
    let mut span = Subspace::zero(f, ambient);
    for (c, part) in parts.iter().enumerate() {
        for r in &ops.rad[c] {
            for w in part.basis() {
                let v = r.apply(layout, w);
                if v.iter().any(|x| !f.is_zero(x)) {
                    span.insert(v);
                }
            }
        }
    }
    let mut candidates: Vec<(usize, Vec<F::Elem>)> = parts
        .iter()
        .enumerate()
        .flat_map(|(c, part)| part.basis().iter().map(move |w| (c, w.clone())))
        .collect();
    if !candidates.is_empty() {
        let shift = rotation % candidates.len();
        candidates.rotate_left(shift);
    }
    let mut generators = Vec::new();
    for (c, v) in candidates {
        if span.dim() == kernel.dim() {
            break;
        }
        if span.contains(&v) {
            continue;
        }
        for u in &ops.proj[c] {
            span.insert(u.apply(layout, &v));
        }
        generators.push((c, v));
    }
    debug_assert_eq!(span.dim(), kernel.dim(), "generators must span the module");
    generators
}

/// Matrix of `⊕ A e_{c_j} → ambient`, sending the `j`-th generator to `images[j]`.
fn boundary_matrix<F: Field>(
    f: &F,
    ops: &AmbientOps<F>,
    layout: Option<&Layout>,
    source: &Layout,
    images: &[Vec<F::Elem>],
    ambient: usize,
) -> Matrix<F> {
    let cols: Vec<Vec<Vec<F::Elem>>> = par_map_range(images.len(), |j| {
        ops.proj[source.blocks[j]].iter().map(|u| u.apply(layout, &images[j])).collect()
    });
    let cols: Vec<Vec<F::Elem>> = cols.into_iter().flatten().collect();
    Matrix::from_columns(f, ambient, &cols)
}

/// `Hom_A(-, X)` applied to the terms of a resolution.
#[derive(Debug, Clone)]
pub struct HomTarget<F: Field> {
    /// Basis of `e_c X` for each idempotent.
    parts: Vec<Subspace<F>>,
    /// `images[c][m] = ρ_X(u_m) · basis(e_c X)`, an `dim X × dim e_c X` matrix.
    images: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> HomTarget<F> {
    pub fn new(proj: &Projectives<F>, target: &ModuleRep<F>) -> Self {
        let f = proj.algebra.field();
        let parts: Vec<Subspace<F>> = proj
            .algebra
            .idempotents()
            .iter()
            .map(|e| Subspace::column_space(&target.act(f, e)))
            .collect();
        let images = proj
            .basis
            .iter()
            .zip(&parts)
            .map(|(us, part)| {
                let b = part.basis_matrix();
                us.iter().map(|u| target.act(f, u).mul(&b)).collect()
            })
            .collect();
        HomTarget { parts, images }
    }

    /// `dim Hom(P, X)` for a sum of projectives.
    pub fn hom_dim(&self, layout: &Layout) -> usize {
        layout.blocks.iter().map(|&c| self.parts[c].dim()).sum()
    }

    /// Matrix of `Hom(P_{i-1}, X) → Hom(P_i, X)` given by precomposition with `∂_i`.
    pub fn coboundary(&self, f: &F, prev: &Layout, cur: &Degree<F>, dims: &[usize]) -> Matrix<F> {
        let rows = self.hom_dim(&cur.layout);
        let cols = self.hom_dim(prev);
        let mut m = Matrix::zeros(f, rows, cols);
        let mut row0 = 0;
        for (j, &cj) in cur.layout.blocks.iter().enumerate() {
            let target = &self.parts[cj];
            let mut col0 = 0;
            for (k, &ck) in prev.blocks.iter().enumerate() {
                let hk = self.parts[ck].dim();
                let off = prev.offsets[k];
                let coeffs = &cur.images[j][off..off + dims[ck]];
                if coeffs.iter().any(|x| !f.is_zero(x)) && hk > 0 && target.dim() > 0 {
                    let mut block = Matrix::zeros(f, self.images[ck][0].rows(), hk);
                    for (c, img) in coeffs.iter().zip(&self.images[ck]) {
                        if !f.is_zero(c) {
                            block.add_scaled(c, img);
                        }
                    }
                    for col in 0..hk {
                        let coords = target.coordinates_unchecked(&block.column(col));
                        for (r, x) in coords.into_iter().enumerate() {
                            m.set(row0 + r, col0 + col, x);
                        }
                    }
                }
                col0 += hk;
            }
            row0 += target.dim();
        }
        m
    }
}

/// `dim Ext^i(M, X)` for `i = 0..=max`, where `M` is the module resolved by `res`.
pub fn ext_dims<F: Field>(res: &mut Resolution<'_, F>, target: &HomTarget<F>, max: usize) -> Vec<usize> {
    let mut ranks = ExtRanks::default();
    (0..=max).map(|i| ranks.ext(res, target, i)).collect()
}

/// Cache of coboundary ranks for one (resolution, target) pair.
#[derive(Debug, Default, Clone)]
pub struct ExtRanks {
    ranks: Vec<Option<usize>>,
}

impl ExtRanks {
    /// Rank of `δ^i : Hom(P_{i-1}, X) → Hom(P_i, X)` (zero for `i = 0`).
    fn rank<F: Field>(&mut self, res: &mut Resolution<'_, F>, target: &HomTarget<F>, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        if self.ranks.len() <= i {
            self.ranks.resize(i + 1, None);
        }
        if let Some(r) = self.ranks[i] {
            return r;
        }
        res.ensure(i);
        let f = res.proj.algebra.field().clone();
        let dims = res.proj.dims.clone();
        let prev = res.degrees[i - 1].layout.clone();
        let cur = &res.degrees[i];
        let r = if cur.layout.rank() == 0 || prev.rank() == 0 {
            0
        } else {
            target.coboundary(&f, &prev, cur, &dims).rank()
        };
        self.ranks[i] = Some(r);
        r
    }

    pub fn ext<F: Field>(&mut self, res: &mut Resolution<'_, F>, target: &HomTarget<F>, i: usize) -> usize {
        res.ensure(i + 1);
        let h = target.hom_dim(&res.degrees[i].layout);
        h - self.rank(res, target, i + 1) - self.rank(res, target, i)
    }
}
