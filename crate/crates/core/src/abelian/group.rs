use std::fmt;

use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::smith::smith_normal_form;
use crate::error::{Error, Result};
use crate::int::{divides, is_negative, reduce_mod, serde_int, Int};

/// `Z/m_1 + ... + Z/m_k` on a fixed generator list; a modulus of 0 means `Z`.
///
/// This is the working presentation for direct sums such as cochain groups.
/// Moduli need not form a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CyclicSum {
    moduli: Vec<Int>,
}

impl CyclicSum {
    pub fn new(moduli: Vec<Int>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|m| is_negative(m)) {
            return Err(Error::InvalidGroup(format!("negative modulus {m}")));
        }
        Ok(CyclicSum { moduli })
    }

    pub fn free(n: usize) -> Self {
        CyclicSum { moduli: vec![Int::ZERO; n] }
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub fn direct_sum<'a>(parts: impl IntoIterator<Item = &'a CyclicSum>) -> Self {
        CyclicSum { moduli: parts.into_iter().flat_map(|p| p.moduli.iter().cloned()).collect() }
    }

    /// Columns `m_i e_i` for every nonzero modulus.
    pub fn relations(&self) -> IntMatrix {
        let idx: Vec<usize> = (0..self.dim()).filter(|&i| !self.moduli[i].is_zero()).collect();
        let mut r = IntMatrix::zeros(self.dim(), idx.len());
        for (c, &i) in idx.iter().enumerate() {
            r[(i, c)] = self.moduli[i].clone();
        }
        r
    }

    pub fn reduce(&self, x: &[Int]) -> Vec<Int> {
        debug_assert_eq!(x.len(), self.dim());
        x.iter().zip(&self.moduli).map(|(a, m)| reduce_mod(a, m)).collect()
    }

    pub fn is_zero(&self, x: &[Int]) -> bool {
        x.iter().zip(&self.moduli).all(|(a, m)| divides(m, a))
    }

    pub fn zero(&self) -> Vec<Int> {
        vec![Int::ZERO; self.dim()]
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|m| !m.is_zero())
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.moduli.iter().fold(Int::ONE, |a, m| a * m))
    }

    /// Isomorphism type.
    pub fn normal_form(&self) -> AbGroup {
        let n = self.dim();
        let mut d = IntMatrix::zeros(n, n);
        for i in 0..n {
            d[(i, i)] = self.moduli[i].clone();
        }
        let s = smith_normal_form(&d);
        AbGroup::from_invariants(s.diag.iter().cloned().chain(std::iter::repeat(Int::ZERO)).take(n))
    }
}

/// `Z^rank + Z/d_1 + ... + Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AbGroup {
    pub rank: usize,
    #[serde(with = "serde_int::vec", default)]
    pub torsion: Vec<Int>,
}

impl AbGroup {
    pub fn new(rank: usize, torsion: Vec<Int>) -> Result<Self> {
        if let Some(d) = torsion.iter().find(|d| *d < &Int::from(2)) {
            return Err(Error::InvalidGroup(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = torsion.windows(2).find(|w| !divides(&w[0], &w[1])) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors {} and {} do not form a divisibility chain",
                w[0], w[1]
            )));
        }
        Ok(AbGroup { rank, torsion })
    }

    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: Vec::new() }
    }

    /// `Z/m`; `m == 0` gives `Z`, `m == 1` the trivial group.
    pub fn cyclic(m: u64) -> Self {
        match m {
            0 => AbGroup::free(1),
            1 => AbGroup::zero(),
            _ => AbGroup { rank: 0, torsion: vec![Int::from(m)] },
        }
    }

    /// Normalizes a list of diagonal invariants from an SNF (zeros mean free,
    /// units are dropped). The nonzero entries must already form a chain.
    pub(crate) fn from_invariants(diag: impl IntoIterator<Item = Int>) -> Self {
        let mut rank = 0;
        let mut torsion = Vec::new();
        for d in diag {
            if d.is_zero() {
                rank += 1;
            } else if d != Int::ONE {
                torsion.push(d);
            }
        }
        AbGroup { rank, torsion }
    }

    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<Int> {
        self.is_finite().then(|| self.torsion.iter().fold(Int::ONE, |a, d| a * d))
    }

    /// Generator presentation: free generators first, then torsion.
    pub fn presentation(&self) -> CyclicSum {
        let mut moduli = vec![Int::ZERO; self.rank];
        moduli.extend(self.torsion.iter().cloned());
        CyclicSum { moduli }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i];
            let mut k = 1;
            while i + k < self.torsion.len() && &self.torsion[i + k] == d {
                k += 1;
            }
            parts.push(if k == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{k}") });
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homomorphism between cyclic sums; `matrix` has one column per source
/// generator. Entries are kept reduced modulo the target moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    source: CyclicSum,
    target: CyclicSum,
    matrix: IntMatrix,
}

impl AbHom {
    pub fn new(source: CyclicSum, target: CyclicSum, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::MalformedHom(format!(
                "matrix is {}x{} but the map is {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.dim(),
                target.dim()
            )));
        }
        for (j, d) in source.moduli().iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            let image: Vec<Int> = matrix.column(j).iter().map(|x| x * d).collect();
            if !target.is_zero(&image) {
                return Err(Error::MalformedHom(format!(
                    "generator {j} has order {d} but {d} times its image is nonzero"
                )));
            }
        }
        let matrix =
            IntMatrix::from_fn(matrix.rows(), matrix.cols(), |i, j| reduce_mod(&matrix[(i, j)], &target.moduli()[i]));
        Ok(AbHom { source, target, matrix })
    }

    pub fn identity(g: &CyclicSum) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(g.dim())).expect("identity")
    }

    pub fn zero(source: &CyclicSum, target: &CyclicSum) -> Self {
        AbHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.dim(), source.dim()) }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(g: &CyclicSum, k: &Int) -> Self {
        let mut m = IntMatrix::identity(g.dim());
        for i in 0..g.dim() {
            m[(i, i)] = k.clone();
        }
        AbHom::new(g.clone(), g.clone(), m).expect("scalar map is well defined")
    }

    pub fn source(&self) -> &CyclicSum {
        &self.source
    }

    pub fn target(&self) -> &CyclicSum {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[Int]) -> Vec<Int> {
        self.target.reduce(&self.matrix.mul_vec(x))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<AbHom> {
        if first.target != self.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose: inner map lands in {} generators, outer starts from {}",
                first.target.dim(),
                self.source.dim()
            )));
        }
        AbHom::new(first.source.clone(), self.target.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("adding maps with different ends".into()));
        }
        let m = IntMatrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| {
            &self.matrix[(i, j)] + &other.matrix[(i, j)]
        });
        AbHom::new(self.source.clone(), self.target.clone(), m)
    }

    pub fn neg(&self) -> AbHom {
        let m = IntMatrix::from_fn(self.matrix.rows(), self.matrix.cols(), |i, j| -&self.matrix[(i, j)]);
        AbHom::new(self.source.clone(), self.target.clone(), m).expect("negation")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Generators (columns, source coordinates) of the kernel of `h`, taken
/// modulo the target relation lattice.
pub fn hom_kernel(h: &AbHom) -> IntMatrix {
    let n = h.source.dim();
    let aug = h.matrix.hstack(&h.target.relations());
    let s = smith_normal_form(&aug);
    let cols: Vec<Vec<Int>> =
        (s.rank..aug.cols()).map(|j| h.source.reduce(&s.v.column(j)[..n])).filter(|c| !h.source.is_zero(c)).collect();
    IntMatrix::from_columns(n, &cols)
}

/// Some `x` with `h(x) = y`, if one exists.
pub fn solve(h: &AbHom, y: &[Int]) -> Option<Vec<Int>> {
    let n = h.source.dim();
    let aug = h.matrix.hstack(&h.target.relations());
    let s = smith_normal_form(&aug);
    let w = s.u.mul_vec(y);
    let mut z = vec![Int::ZERO; aug.cols()];
    for (i, wi) in w.iter().enumerate() {
        if i < s.rank {
            if !divides(&s.diag[i], wi) {
                return None;
            }
            z[i] = wi / &s.diag[i];
        } else if !wi.is_zero() {
            return None;
        }
    }
    let x = s.v.mul_vec(&z);
    Some(h.source.reduce(&x[..n]))
}
