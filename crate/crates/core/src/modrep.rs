//! Explicit matrix representations of string and band modules, their tensor
//! products, and the radical series / Loewy length of the result.
//!
//! A module is given by the actions of `X` and `Y`, the images of `sigma + 1`
//! and `tau + 1`. Every constructor checks `X^2 = Y^2 = 0`.

use crate::error::{Error, Result};
use crate::gf2e::{Field, FieldElem, FieldMatrix};
use crate::words::{self, Base, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    x: FieldMatrix,
    y: FieldMatrix,
    field: Field,
}

/// Dimensions of `rad^t M` for `t = 0, 1, ...`, ending at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalSeries {
    pub dims: Vec<usize>,
}

impl RadicalSeries {
    pub fn loewy_length(&self) -> usize {
        self.dims.len() - 1
    }
}

impl Representation {
    /// Wraps a pair of action matrices, checking shapes and square-zero.
    pub fn new(x: FieldMatrix, y: FieldMatrix, field: Field) -> Result<Self> {
        let n = x.rows();
        if x.cols() != n || y.rows() != n || y.cols() != n {
            return Err(Error::Dimension(format!(
                "action matrices must be square of equal size, got {}x{} and {}x{}",
                x.rows(),
                x.cols(),
                y.rows(),
                y.cols()
            )));
        }
        let rep = Representation { x, y, field };
        for (name, z) in [("X", &rep.x), ("Y", &rep.y)] {
            if !z.left_mul_sparse(&z.sparse_rows(), &rep.field).is_zero() {
                return Err(Error::domain(format!("{name}^2 != 0")));
            }
        }
        Ok(rep)
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &FieldMatrix {
        &self.x
    }

    pub fn y(&self) -> &FieldMatrix {
        &self.y
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// The trivial one-dimensional module.
    pub fn trivial(field: &Field) -> Self {
        string_rep(&Word::empty(), field)
    }

    /// The same space with the roles of `X` and `Y` exchanged.
    pub fn swapped(&self) -> Self {
        Representation {
            x: self.y.clone(),
            y: self.x.clone(),
            field: self.field.clone(),
        }
    }

    /// The alternating product `Z_1 Z_2 ... Z_len` with `Z_1 = first`, as a matrix.
    pub fn alternating_product(&self, first: Base, len: usize) -> FieldMatrix {
        // Build right to left: start from the identity and multiply on the left.
        let sx = self.x.sparse_rows();
        let sy = self.y.sparse_rows();
        let mut acc = FieldMatrix::identity(self.dim());
        for i in (0..len).rev() {
            let base = if i % 2 == 0 { first } else { first.other() };
            let s = if base == Base::X { &sx } else { &sy };
            acc = acc.left_mul_sparse(s, &self.field);
        }
        acc
    }
}

/// The string module `M(w)` on basis `e_0 .. e_m`: a direct letter
/// `a_i = Z` sends `e_i` to `e_{i-1}`, an inverse letter `a_{i+1} = Z^-1`
/// sends `e_i` to `e_{i+1}`.
pub fn string_rep(w: &Word, field: &Field) -> Representation {
    let n = w.len() + 1;
    let mut x = FieldMatrix::zeros(n, n);
    let mut y = FieldMatrix::zeros(n, n);
    for (k, letter) in w.letters().iter().enumerate() {
        // letter is a_{k+1}; it joins e_k and e_{k+1}
        let z = match letter.base {
            Base::X => &mut x,
            Base::Y => &mut y,
        };
        if letter.inverted {
            z.set(k + 1, k, FieldElem::ONE);
        } else {
            z.set(k, k + 1, FieldElem::ONE);
        }
    }
    Representation::new(x, y, field.clone()).expect("string modules satisfy X^2 = Y^2 = 0")
}

/// `J_n(rho)`: `rho` on the diagonal, 1 on the subdiagonal.
pub fn jordan_block(rho: FieldElem, n: usize) -> FieldMatrix {
    FieldMatrix::from_fn(n, n, |i, j| {
        if i == j {
            rho
        } else if i == j + 1 {
            FieldElem::ONE
        } else {
            FieldElem::ZERO
        }
    })
}

/// The band module `M(w, J_n(rho))`.
///
/// The space is `V_0 + ... + V_{m-1}` with `V_i = k^n`. The cyclic shift `T`
/// maps `V_i -> V_{i-1}` by the identity for `i >= 2`, `V_1 -> V_0` by the
/// Jordan block, and `V_0 -> V_{m-1}` by the identity. A direct letter
/// `a_i = Z` acts on `V_i` as `T`; an inverse letter `a_{i+1} = Z^-1` acts on
/// `V_i` as `T^-1`. Letter indices are read cyclically, `a_0 = a_m`.
pub fn band_rep(w: &Word, rho: FieldElem, n: usize, field: &Field) -> Result<Representation> {
    if !words::in_w_prime(w) {
        return Err(Error::domain(format!("{w} is not a band word")));
    }
    if rho.is_zero() || !field.contains(rho) {
        return Err(Error::domain(format!(
            "band parameter {rho} must be a nonzero element of {field}"
        )));
    }
    if n == 0 {
        return Err(Error::domain("band block size must be at least 1"));
    }
    let m = w.len();
    let phi = jordan_block(rho, n);
    let phi_inv = phi.inverse(field)?;
    let identity = FieldMatrix::identity(n);
    let letters = w.letters();
    let dim = m * n;
    let mut x = FieldMatrix::zeros(dim, dim);
    let mut y = FieldMatrix::zeros(dim, dim);

    // Writes the block `map: V_src -> V_dst` into the action matrix.
    let mut place = |base: Base, src: usize, dst: usize, map: &FieldMatrix| {
        let z = match base {
            Base::X => &mut x,
            Base::Y => &mut y,
        };
        for r in 0..n {
            for c in 0..n {
                z.set(dst * n + r, src * n + c, map.get(r, c));
            }
        }
    };

    for i in 0..m {
        let a_i = letters[(i + m - 1) % m];
        let a_next = letters[i];
        if !a_i.inverted {
            // T on V_i
            let (dst, map) = match i {
                0 => (m - 1, &identity),
                1 => (0, &phi),
                _ => (i - 1, &identity),
            };
            place(a_i.base, i, dst, map);
        }
        if a_next.inverted {
            // T^-1 on V_i
            let (dst, map) = match i {
                0 => (1 % m, &phi_inv),
                _ if i == m - 1 => (0, &identity),
                _ => (i + 1, &identity),
            };
            place(a_next.base, i, dst, map);
        }
    }
    Representation::new(x, y, field.clone())
}

/// The regular module, the band on `(XY)^q (X^-1 Y^-1)^q` with parameter 1.
pub fn regular_rep(q: u64, field: &Field) -> Result<Representation> {
    band_rep(&regular_word(q)?, FieldElem::ONE, 1, field)
}

/// `(XY)^q (X^-1 Y^-1)^q` for a power of two `q >= 2`.
pub fn regular_word(q: u64) -> Result<Word> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::domain(format!(
            "q must be a power of 2 with q >= 2, got {q}"
        )));
    }
    let t = 2 * q as usize;
    words::two_leg_band_word(t, t)
}

/// The tensor product with `Z` acting as `Z (x) 1 + 1 (x) Z + Z (x) Z`.
pub fn tensor_rep(r: &Representation, s: &Representation) -> Result<Representation> {
    if r.field != s.field {
        return Err(Error::FieldMismatch {
            left: r.field.degree(),
            right: s.field.degree(),
        });
    }
    let f = &r.field;
    let ir = FieldMatrix::identity(r.dim());
    let is = FieldMatrix::identity(s.dim());
    let act = |zr: &FieldMatrix, zs: &FieldMatrix| -> FieldMatrix {
        zr.kron(&is, f)
            .add(&ir.kron(zs, f))
            .and_then(|m| m.add(&zr.kron(zs, f)))
            .expect("kronecker factors have matching shapes")
    };
    Representation::new(act(&r.x, &s.x), act(&r.y, &s.y), f.clone())
}

/// Iterates `W_0 = M`, `W_{t+1} = X W_t + Y W_t` down to zero.
pub fn radical_series(r: &Representation) -> RadicalSeries {
    let f = &r.field;
    let mut w = FieldMatrix::identity(r.dim());
    let mut dims = vec![r.dim()];
    while w.cols() > 0 {
        let xw = r.x.mul(&w, f).expect("square action");
        let yw = r.y.mul(&w, f).expect("square action");
        w = FieldMatrix::col_space_sum(&[&xw, &yw], f).expect("equal row counts");
        dims.push(w.cols());
    }
    RadicalSeries { dims }
}

/// Smallest `t` with `rad^t M = 0`.
///
/// `rad^t M` is spanned by the images of the two alternating monomials of
/// length `t` (all other monomials of that length vanish since
/// `X^2 = Y^2 = 0`), so the length is the first `t` at which both
/// `XYX...` and `YXY...` act as zero. This agrees with [`radical_series`]
/// but needs no eliminations.
pub fn loewy_length(r: &Representation) -> usize {
    if r.dim() == 0 {
        return 0;
    }
    let f = &r.field;
    let sx = r.x.sparse_rows();
    let sy = r.y.sparse_rows();
    // starts_x = X Y X ... (t factors), starts_y = Y X Y ...
    let mut starts_x = r.x.clone();
    let mut starts_y = r.y.clone();
    let mut t = 1;
    while !(starts_x.is_zero() && starts_y.is_zero()) {
        let next_x = starts_y.left_mul_sparse(&sx, f);
        let next_y = starts_x.left_mul_sparse(&sy, f);
        starts_x = next_x;
        starts_y = next_y;
        t += 1;
    }
    t
}

/// `dim (ker X  ∩  ker Y)`.
pub fn socle_dim(r: &Representation) -> usize {
    FieldMatrix::kernel_meet(&[&r.x, &r.y], &r.field)
        .expect("square action")
        .cols()
}

/// `dim M / rad M`.
pub fn top_dim(r: &Representation) -> usize {
    let rad = FieldMatrix::col_space_sum(&[&r.x, &r.y], &r.field).expect("square action");
    r.dim() - rad.cols()
}

/// `true` iff `(XY)^q + (YX)^q` acts as zero.
pub fn check_dihedral(r: &Representation, q: u64) -> bool {
    let len = 2 * q as usize;
    let xy = r.alternating_product(Base::X, len);
    let yx = r.alternating_product(Base::Y, len);
    xy == yx
}
