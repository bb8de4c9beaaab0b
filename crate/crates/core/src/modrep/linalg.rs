//! Dense linear algebra over the prime fields F₂ and F₃.

pub type Vector = Vec<u8>;

/// Square matrix over F_p acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub p: u8,
    pub rows: Vec<Vector>,
}

fn inv_mod(a: u8, p: u8) -> u8 {
    (1..p)
        .find(|&b| (a as u16 * b as u16) % p as u16 == 1)
        .expect("nonzero residue")
}

pub fn add(p: u8, a: &[u8], b: &[u8]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| (x + y) % p).collect()
}

pub fn sub(p: u8, a: &[u8], b: &[u8]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
}

pub fn scale(p: u8, c: u8, a: &[u8]) -> Vector {
    a.iter()
        .map(|&x| ((x as u16 * c as u16) % p as u16) as u8)
        .collect()
}

pub fn is_zero(v: &[u8]) -> bool {
    v.iter().all(|&x| x == 0)
}

impl Matrix {
    pub fn identity(p: u8, n: usize) -> Matrix {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u8::from(i == j)).collect())
            .collect();
        Matrix { p, rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &[u8]) -> Vector {
        let n = self.dim();
        let mut out = vec![0u16; n];
        for (i, &c) in v.iter().enumerate() {
            if c != 0 {
                for (j, &m) in self.rows[i].iter().enumerate() {
                    out[j] += c as u16 * m as u16;
                }
            }
        }
        out.into_iter().map(|x| (x % self.p as u16) as u8).collect()
    }

    /// `self · other`: first `self`, then `other` on row vectors.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        Matrix {
            p: self.p,
            rows: self.rows.iter().map(|r| other.apply(r)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.p, self.dim())
    }

    /// `self − I`.
    pub fn minus_identity(&self) -> Matrix {
        let mut m = self.clone();
        for i in 0..m.dim() {
            m.rows[i][i] = (m.rows[i][i] + self.p - 1) % self.p;
        }
        m
    }
}

/// A subspace stored by its reduced row echelon basis (canonical).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    pub dim_ambient: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace {
            dim_ambient: n,
            basis: Vec::new(),
        }
    }

    pub fn whole(p: u8, n: usize) -> Subspace {
        Subspace {
            dim_ambient: n,
            basis: Matrix::identity(p, n).rows,
        }
    }

    pub fn span(p: u8, n: usize, vecs: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace {
            dim_ambient: n,
            basis: rref(p, vecs.into_iter().collect()),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: u8, v: &[u8]) -> bool {
        reduce(p, &self.basis, v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, p: u8, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(p, v))
    }

    pub fn sum(&self, p: u8, other: &Subspace) -> Subspace {
        Subspace::span(
            p,
            self.dim_ambient,
            self.basis.iter().chain(&other.basis).cloned(),
        )
    }

    pub fn intersect(&self, p: u8, other: &Subspace) -> Subspace {
        // Kernel of (a, b) ↦ aU − bW gives the common vectors aU.
        let k = self.dim();
        let n = self.dim_ambient;
        let mut stacked: Vec<Vector> = self.basis.clone();
        stacked.extend(other.basis.iter().map(|w| scale(p, p - 1, w)));
        let ker = left_kernel(p, &stacked, n);
        let vecs = ker.into_iter().map(|c| {
            let mut v = vec![0u8; n];
            for i in 0..k {
                v = add(p, &v, &scale(p, c[i], &self.basis[i]));
            }
            v
        });
        Subspace::span(p, n, vecs)
    }

    /// Image under a matrix.
    pub fn image(&self, p: u8, m: &Matrix) -> Subspace {
        Subspace::span(p, self.dim_ambient, self.basis.iter().map(|v| m.apply(v)))
    }

    /// Every vector of the subspace, in lexicographic coefficient order.
    pub fn vectors(&self, p: u8) -> Vec<Vector> {
        let mut out = vec![vec![0u8; self.dim_ambient]];
        for b in &self.basis {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for c in 0..p {
                    next.push(add(p, v, &scale(p, c, b)));
                }
            }
            out = next;
        }
        out
    }
}

/// Reduces `v` against an echelon basis.
fn reduce(p: u8, basis: &[Vector], v: &[u8]) -> Vector {
    let mut v = v.to_vec();
    for b in basis {
        let piv = b.iter().position(|&x| x != 0).unwrap();
        if v[piv] != 0 {
            let c = v[piv];
            v = sub(p, &v, &scale(p, c, b));
        }
    }
    v
}

/// Reduced row echelon form with zero rows removed.
pub fn rref(p: u8, mut rows: Vec<Vector>) -> Vec<Vector> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let c = inv_mod(rows[r][col], p);
        rows[r] = scale(p, c, &rows[r]);
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let f = rows[i][col];
                rows[i] = sub(p, &rows[i], &scale(p, f, &rows[r]));
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Basis of `{c : Σ cᵢ rowsᵢ = 0}`.
pub fn left_kernel(p: u8, rows: &[Vector], n: usize) -> Vec<Vector> {
    let m = rows.len();
    // Augment each row with the identity and reduce on the first n columns.
    let aug: Vec<Vector> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..m).map(|j| u8::from(i == j)));
            v
        })
        .collect();
    let red = rref(p, aug);
    let mut out = Vec::new();
    for r in red {
        if r[..n].iter().all(|&x| x == 0) {
            out.push(r[n..].to_vec());
        }
    }
    out
}

/// `{v : vM = 0}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let n = m.dim();
    Subspace::span(m.p, n, left_kernel(m.p, &m.rows, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_and_kernel() {
        let m = Matrix {
            p: 2,
            rows: vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        };
        assert_eq!(kernel(&m).dim(), 1);
        assert_eq!(rref(2, m.rows.clone()).len(), 2);
        let m3 = Matrix {
            p: 3,
            rows: vec![vec![1, 2], vec![2, 1]],
        };
        assert_eq!(kernel(&m3).basis, vec![vec![1, 1]]);
    }

    #[test]
    fn intersection_and_sum() {
        let u = Subspace::span(2, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::span(2, 3, vec![vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(u.intersect(2, &w).basis, vec![vec![0, 1, 0]]);
        assert_eq!(u.sum(2, &w).dim(), 3);
        assert_eq!(u.vectors(2).len(), 4);
    }
}
