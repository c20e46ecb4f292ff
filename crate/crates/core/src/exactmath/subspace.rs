use super::field::{Field, Scalar};
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of `field^dim`, kept as a reduced echelon basis so that
/// membership is a single reduction.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    dim: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, dim: usize) -> Self {
        Subspace {
            field,
            dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn span(field: Field, dim: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        let mut s = Subspace::zero(field, dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: Field, dim: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subspace::zero(field, dim);
        for i in indices {
            let mut v = vec![field.zero(); dim];
            v[i] = field.one();
            s.insert(&v).expect("index within ambient dimension");
        }
        s
    }

    pub fn whole(field: Field, dim: usize) -> Self {
        Subspace::coordinate(field, dim, 0..dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    /// Residue of `v` after eliminating against the basis.
    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f = self.field;
        let mut r = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        r
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        self.check_len(v)?;
        let f = self.field;
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = f.inv(&r[p]).expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = f.mul(x, &inv);
            }
        }
        // keep the basis fully reduced
        for b in self.basis.iter_mut() {
            if b[p].is_zero() {
                continue;
            }
            let c = b[p].clone();
            for (x, y) in b.iter_mut().zip(&r) {
                if !y.is_zero() {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        Ok(true)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        self.check_len(v)?;
        Ok(self.reduce(v).iter().all(Scalar::is_zero))
    }

    pub fn contains_space(&self, other: &Subspace) -> Result<bool> {
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut s = self.clone();
        for v in &other.basis {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains_space(other)?)
    }

    /// `dim(self ∩ other)`, from `dim(A) + dim(B) - dim(A + B)`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// Matrix whose columns are the basis vectors.
    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.dim, &self.basis).expect("basis vectors have ambient length")
    }
}

fn common_dim(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<Option<usize>> {
    let mut dim = None;
    for v in a.iter().chain(b) {
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                })
            }
            _ => {}
        }
    }
    Ok(dim)
}

/// `span(a) == span(b)`.
pub fn subspace_equal(field: Field, a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Result<bool> {
    let Some(dim) = common_dim(a, b)? else {
        return Ok(true);
    };
    Subspace::span(field, dim, a)?.equals(&Subspace::span(field, dim, b)?)
}

/// `v ∈ span(space)`.
pub fn subspace_contains(field: Field, space: &[Vec<Scalar>], v: &[Scalar]) -> Result<bool> {
    common_dim(space, std::slice::from_ref(&v.to_vec()))?;
    Subspace::span(field, v.len(), space)?.contains(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(f: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect()
    }

    #[test]
    fn scaling_preserves_span() {
        let q = Field::Rational;
        assert!(subspace_equal(q, &vecs(q, &[&[1, 0]]), &vecs(q, &[&[2, 0]])).unwrap());
        assert!(!subspace_equal(q, &vecs(q, &[&[1, 0]]), &vecs(q, &[&[0, 1]])).unwrap());
        assert!(subspace_equal(q, &vecs(q, &[&[1, 1], &[1, 0]]), &vecs(q, &[&[0, 1], &[1, 0]])).unwrap());
    }

    #[test]
    fn membership() {
        let q = Field::Rational;
        let s = vecs(q, &[&[1, 0]]);
        assert!(subspace_contains(q, &s, &vecs(q, &[&[3, 0]])[0]).unwrap());
        assert!(!subspace_contains(q, &s, &vecs(q, &[&[0, 1]])[0]).unwrap());
        let f5 = Field::prime(5).unwrap();
        assert!(subspace_contains(f5, &vecs(f5, &[&[1, 2]]), &vecs(f5, &[&[3, 1]])[0]).unwrap());
        assert!(!subspace_contains(q, &vecs(q, &[&[1, 2]]), &vecs(q, &[&[3, 1]])[0]).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let q = Field::Rational;
        assert!(subspace_equal(q, &vecs(q, &[&[1, 0]]), &vecs(q, &[&[1, 0, 0]])).is_err());
        assert!(subspace_contains(q, &vecs(q, &[&[1, 0]]), &vecs(q, &[&[1]])[0]).is_err());
    }

    #[test]
    fn intersection_dimension() {
        let q = Field::Rational;
        let a = Subspace::coordinate(q, 3, [0, 1]);
        let b = Subspace::coordinate(q, 3, [1, 2]);
        assert_eq!(a.intersection_dim(&b).unwrap(), 1);
        assert_eq!(a.sum(&b).unwrap().dim(), 3);
    }
}
