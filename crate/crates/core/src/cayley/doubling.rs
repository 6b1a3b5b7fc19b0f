//! Cayley–Dickson doubling `(a + b v)(c + d v) = (ac + mu d̄ b) + (da + b c̄) v`
//! with `mu = v^2 = -n(v)`, so that `n(a + b v) = n(a) - mu n(b)`.

use super::{
    AlgebraRef, CayleyAlgebra, Classification, Octonion, ProductTerms, SubalgebraBasis, DIM,
};
use crate::error::{Error, Result};
use crate::exactfield::{Field, FieldElem};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoublingParams {
    /// Three doublings of `F 1`; characteristic other than 2.
    Standard { mu: [FieldElem; 3] },
    /// Two doublings of `F[a]`, `a^2 = a - c` (trace 1, norm c).
    TraceOne { c: FieldElem, mu: [FieldElem; 2] },
}

impl DoublingParams {
    fn label(&self) -> String {
        let j = |v: &[FieldElem]| {
            v.iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            DoublingParams::Standard { mu } => format!("doubling(mu={})", j(mu)),
            DoublingParams::TraceOne { c, mu } => format!("doubling(c={c};mu={})", j(mu)),
        }
    }
}

/// Algebra of dimension `dim` with a conjugation, used while doubling.
struct Small {
    dim: usize,
    table: Vec<ProductTerms>,
    conj: Vec<ProductTerms>,
    norms: Vec<FieldElem>,
    polar: Vec<Vec<FieldElem>>,
}

impl Small {
    fn mul_sparse(&self, f: Field, x: &ProductTerms, y: &ProductTerms) -> Vec<FieldElem> {
        let mut out = vec![f.zero(); self.dim];
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                for (k, c) in &self.table[i * self.dim + j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn double(&self, f: Field, mu: &FieldElem) -> Small {
        let m = self.dim;
        let n = 2 * m;
        let unit = |i: usize| -> ProductTerms { vec![(i, f.one())] };
        let sparse = |v: Vec<FieldElem>, shift: usize, scale: &FieldElem| -> ProductTerms {
            v.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k + shift, &c * scale))
                .collect()
        };
        let one = f.one();
        let mut table = vec![Vec::new(); n * n];
        for i in 0..m {
            for j in 0..m {
                // a_i a_j
                table[i * n + j] = sparse(self.mul_sparse(f, &unit(i), &unit(j)), 0, &one);
                // a_i (a_j v) = (a_j a_i) v
                table[i * n + (j + m)] = sparse(self.mul_sparse(f, &unit(j), &unit(i)), m, &one);
                // (a_i v) a_j = (a_i ā_j) v
                table[(i + m) * n + j] =
                    sparse(self.mul_sparse(f, &unit(i), &self.conj[j]), m, &one);
                // (a_i v)(a_j v) = mu ā_j a_i
                table[(i + m) * n + (j + m)] =
                    sparse(self.mul_sparse(f, &self.conj[j], &unit(i)), 0, mu);
            }
        }
        // conj(a + b v) = ā - b v
        let mut conj = self.conj.clone();
        conj.extend((0..m).map(|i| vec![(i + m, -&one)]));
        let mut norms = self.norms.clone();
        norms.extend(self.norms.iter().map(|x| -(mu * x)));
        let mut polar = vec![vec![f.zero(); n]; n];
        for i in 0..m {
            for j in 0..m {
                polar[i][j] = self.polar[i][j].clone();
                polar[i + m][j + m] = -(mu * &self.polar[i][j]);
            }
        }
        Small {
            dim: n,
            table,
            conj,
            norms,
            polar,
        }
    }
}

fn nonzero(mu: &[FieldElem]) -> Result<()> {
    if mu.iter().any(|m| m.is_zero()) {
        return Err(Error::ZeroParameter);
    }
    Ok(())
}

/// Builds a Cayley algebra by repeated doubling and classifies it: an
/// anisotropy certificate gives `Division`, a verified canonical basis gives
/// `Split`, and anything else stays `Unclassified`.
pub fn build_by_doubling(field: Field, params: DoublingParams) -> Result<AlgebraRef> {
    let f = field;
    let in_field = |e: &FieldElem| e.field() == f;
    let (base, mus): (Small, Vec<FieldElem>) = match &params {
        DoublingParams::Standard { mu } => {
            if f.characteristic() == 2 {
                return Err(Error::UnsupportedCharCombination(
                    "doubling from F 1 needs characteristic other than 2; use the trace-one start"
                        .into(),
                ));
            }
            if !mu.iter().all(in_field) {
                return Err(Error::WrongField(format!("parameters must lie in {f}")));
            }
            nonzero(mu)?;
            let base = Small {
                dim: 1,
                table: vec![vec![(0, f.one())]],
                conj: vec![vec![(0, f.one())]],
                norms: vec![f.one()],
                polar: vec![vec![f.from_int(2)]],
            };
            (base, mu.to_vec())
        }
        DoublingParams::TraceOne { c, mu } => {
            if !in_field(c) || !mu.iter().all(in_field) {
                return Err(Error::WrongField(format!("parameters must lie in {f}")));
            }
            nonzero(mu)?;
            if (&f.one() - &(&f.from_int(4) * c)).is_zero() {
                return Err(Error::NotCompositionSubalgebra(
                    "F[a] with a^2 = a - c is singular when 4c = 1".into(),
                ));
            }
            let one = f.one();
            let base = Small {
                dim: 2,
                table: vec![
                    vec![(0, one.clone())],
                    vec![(1, one.clone())],
                    vec![(1, one.clone())],
                    vec![(0, -c), (1, one.clone())],
                ],
                conj: vec![vec![(0, one.clone())], vec![(0, one.clone()), (1, -&one)]],
                norms: vec![one.clone(), c.clone()],
                polar: vec![
                    vec![f.from_int(2), one.clone()],
                    vec![one, &f.from_int(2) * c],
                ],
            };
            (base, mu.to_vec())
        }
    };
    let mut s = base;
    for mu in &mus {
        s = s.double(f, mu);
    }
    debug_assert_eq!(s.dim, DIM);
    let polar = Matrix::from_rows(f, DIM, DIM, s.polar.into_iter().flatten().collect());
    let mut unit = vec![f.zero(); DIM];
    unit[0] = f.one();
    let raw = CayleyAlgebra::from_parts(
        format!("{}/{f}", params.label()),
        f,
        s.table,
        s.norms,
        polar,
        unit,
        Classification::Unclassified,
    )?;
    super::classify(&raw)
}

/// `S + S v` for a composition subalgebra `S` and an anisotropic `v ⟂ S`.
/// The basis is that of `S` followed by `s_i v`.
pub fn double(s: &SubalgebraBasis, v: &Octonion) -> Result<SubalgebraBasis> {
    if !v.same_algebra(&s.basis()[0]) {
        return Err(Error::AlgebraMismatch);
    }
    if !s.is_orthogonal_to(v) {
        return Err(Error::NotOrthogonal(
            "doubling element is not orthogonal to S".into(),
        ));
    }
    if v.norm().is_zero() {
        return Err(Error::IsotropicDoubler);
    }
    let mut basis = s.basis().to_vec();
    basis.extend(s.basis().iter().map(|b| b * v));
    Ok(SubalgebraBasis::new_unchecked(s.algebra(), basis))
}
