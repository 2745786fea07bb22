use super::group::{hom_kernel, AbGroup, AbHom, CyclicSum};
use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::int::{divides, reduce_mod, Int};

/// `<num> / <den>` inside a cyclic sum, with both subgroups taken together
/// with the ambient relation lattice.
///
/// Internally the numerator lattice gets a basis `b_i = s_i * U^-1 e_i` from
/// its Smith form, elements of the numerator are written in that basis
/// (`w` coordinates), and a second Smith form of the denominator in
/// `w` coordinates yields the normal form.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: CyclicSum,
    num: IntMatrix,
    den: IntMatrix,
    // numerator lattice
    u_num: IntMatrix,
    s_num: Vec<Int>,
    basis: IntMatrix,
    // quotient of w coordinates
    u_q: IntMatrix,
    u_q_inv: IntMatrix,
    t: Vec<Int>,
    /// normal-form generator k corresponds to z coordinate `slots[k]`
    slots: Vec<usize>,
    group: AbGroup,
}

impl Subquotient {
    pub fn new(ambient: &CyclicSum, num: &IntMatrix, den: &IntMatrix) -> Result<Self> {
        let n = ambient.dim();
        if num.rows() != n || den.rows() != n {
            return Err(Error::DimensionMismatch(format!(
                "subquotient generators have {} and {} rows, ambient has {n} generators",
                num.rows(),
                den.rows()
            )));
        }
        let rel = ambient.relations();
        let sn = smith_normal_form(&num.hstack(&rel));
        let r = sn.rank;
        let s_num: Vec<Int> = sn.diag[..r].to_vec();
        let basis = IntMatrix::from_fn(n, r, |i, j| &sn.u_inv[(i, j)] * &s_num[j]);

        let mut sq = Subquotient {
            ambient: ambient.clone(),
            num: num.clone(),
            den: den.clone(),
            u_num: sn.u,
            s_num,
            basis,
            u_q: IntMatrix::identity(r),
            u_q_inv: IntMatrix::identity(r),
            t: Vec::new(),
            slots: Vec::new(),
            group: AbGroup::zero(),
        };

        let den_all = den.hstack(&rel);
        let mut cols = Vec::with_capacity(den_all.cols());
        for j in 0..den_all.cols() {
            match sq.w_coords(&den_all.column(j)) {
                Some(w) => cols.push(w),
                None => return Err(Error::DenominatorNotContained),
            }
        }
        let c = IntMatrix::from_columns(r, &cols);
        let sc = smith_normal_form(&c);
        let mut t = sc.diag[..sc.rank].to_vec();
        t.resize(r, Int::ZERO);
        let free = (sc.rank..r).collect::<Vec<_>>();
        let tors = (0..sc.rank).filter(|&i| t[i] != Int::ONE).collect::<Vec<_>>();
        sq.group = AbGroup::from_invariants(free.iter().map(|_| Int::ZERO).chain(tors.iter().map(|&i| t[i].clone())));
        sq.slots = free.into_iter().chain(tors).collect();
        sq.t = t;
        sq.u_q = sc.u;
        sq.u_q_inv = sc.u_inv;
        Ok(sq)
    }

    /// Coordinates in the numerator lattice basis, `None` if `x` is outside it.
    fn w_coords(&self, x: &[Int]) -> Option<Vec<Int>> {
        let y = self.u_num.mul_vec(x);
        let r = self.s_num.len();
        if y[r..].iter().any(|v| !v.is_zero()) {
            return None;
        }
        let mut w = Vec::with_capacity(r);
        for (yi, si) in y[..r].iter().zip(&self.s_num) {
            if !divides(si, yi) {
                return None;
            }
            w.push(yi / si);
        }
        Some(w)
    }

    pub fn ambient(&self) -> &CyclicSum {
        &self.ambient
    }

    pub fn numerator(&self) -> &IntMatrix {
        &self.num
    }

    pub fn denominator(&self) -> &IntMatrix {
        &self.den
    }

    /// Isomorphism type; its generator list is the normal-form basis.
    pub fn group(&self) -> &AbGroup {
        &self.group
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        x.len() == self.ambient.dim() && self.w_coords(x).is_some()
    }

    /// Normal-form coordinates of a numerator element (torsion entries reduced).
    pub fn reduce(&self, x: &[Int]) -> Result<Vec<Int>> {
        if x.len() != self.ambient.dim() {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, ambient has {}",
                x.len(),
                self.ambient.dim()
            )));
        }
        let w = self.w_coords(x).ok_or(Error::NotInNumerator)?;
        let z = self.u_q.mul_vec(&w);
        Ok(self.slots.iter().map(|&i| reduce_mod(&z[i], &self.t[i])).collect())
    }

    pub fn element_is_zero(&self, x: &[Int]) -> Result<bool> {
        Ok(self.reduce(x)?.iter().all(Int::is_zero))
    }

    /// Representative in the ambient group of normal-form generator `k`.
    pub fn lift_generator(&self, k: usize) -> Vec<Int> {
        let w = self.u_q_inv.column(self.slots[k]);
        self.ambient.reduce(&self.basis.mul_vec(&w))
    }

    /// Representative of an arbitrary normal-form element.
    pub fn lift(&self, coords: &[Int]) -> Vec<Int> {
        assert_eq!(coords.len(), self.slots.len(), "normal-form coordinate count");
        let mut z = vec![Int::ZERO; self.t.len()];
        for (c, &i) in coords.iter().zip(&self.slots) {
            z[i] = c.clone();
        }
        let w = self.u_q_inv.mul_vec(&z);
        self.ambient.reduce(&self.basis.mul_vec(&w))
    }

    pub fn generators(&self) -> Vec<Vec<Int>> {
        (0..self.slots.len()).map(|k| self.lift_generator(k)).collect()
    }
}

/// The map on normal forms induced by `f: src.ambient -> dst.ambient`.
pub fn induced_subquotient_map(f: &AbHom, src: &Subquotient, dst: &Subquotient) -> Result<AbHom> {
    if f.source() != src.ambient() || f.target() != dst.ambient() {
        return Err(Error::DimensionMismatch("map does not match the subquotient ambients".into()));
    }
    for j in 0..src.num.cols() {
        if !dst.contains(&f.apply(&src.num.column(j))) {
            return Err(Error::NotChainCompatible(format!("numerator generator {j} maps outside the numerator")));
        }
    }
    for j in 0..src.den.cols() {
        if !dst.element_is_zero(&f.apply(&src.den.column(j)))? {
            return Err(Error::NotChainCompatible(format!("denominator generator {j} maps outside the denominator")));
        }
    }
    let cols: Vec<Vec<Int>> =
        (0..src.group.ngens()).map(|k| dst.reduce(&f.apply(&src.lift_generator(k)))).collect::<Result<_>>()?;
    let m = IntMatrix::from_columns(dst.group.ngens(), &cols);
    AbHom::new(src.group.presentation(), dst.group.presentation(), m)
}

/// Minimal generators of `ker f` in source normal-form coordinates.
pub fn kernel_of_subquotient_map(f: &AbHom) -> Vec<Vec<Int>> {
    let k = hom_kernel(f);
    let sq = Subquotient::new(f.source(), &k, &IntMatrix::zeros(f.source().dim(), 0))
        .expect("zero denominator is always contained");
    sq.generators()
}
