//! Small-integer lattice arithmetic on `Z^d`: gcd helpers, Hermite reduction
//! of full-rank bases, unimodular frames adapted to a direction, and rank-two
//! sublattice coordinates.
//!
//! Everything here works on `i64`; exponent vectors in this crate are lattice
//! points of desk-scale size, while coefficients live in big integers.

/// Returns `(g, x, y)` with `a*x + b*y = g` and `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    ext_gcd(a, b).0
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Gcd of the absolute values of all coordinates (0 for the zero vector).
pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Splits a nonzero vector into `(primitive, multiplicity)` with the primitive
/// part sign-normalized so its first nonzero coordinate is positive.
pub fn primitive_part(v: &[i64]) -> Option<(Vec<i64>, i64)> {
    let g = content(v);
    if g == 0 {
        return None;
    }
    let mut p: Vec<i64> = v.iter().map(|x| x / g).collect();
    let mut k = g;
    if p.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        p.iter_mut().for_each(|x| *x = -*x);
        k = -k;
    }
    Some((p, k))
}

/// True when the first nonzero coordinate is positive.
pub fn is_positive_half(v: &[i64]) -> bool {
    v.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

pub fn chebyshev(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Nonzero vectors with Chebyshev norm at most `bound` whose first nonzero
/// coordinate is positive, ordered by norm and then lexicographically.
pub fn search_vectors(dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if dim == 0 || bound < 1 {
        return out;
    }
    let mut v = vec![-bound; dim];
    loop {
        if is_positive_half(&v) {
            out.push(v.clone());
        }
        let mut i = dim;
        loop {
            if i == 0 {
                out.sort_by(|a, b| chebyshev(a).cmp(&chebyshev(b)).then_with(|| a.cmp(b)));
                return out;
            }
            i -= 1;
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
        }
    }
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| k * x).collect()
}

/// Applies the unimodular 2x2 row operation that replaces entries `a`, `b`
/// of rows `i`, `j` by `(gcd, 0)`.  The same operation is applied to the rows
/// of every matrix in `rows`, and its inverse to the columns of every matrix
/// in `cols`.
fn gcd_step(i: usize, j: usize, a: i64, b: i64, rows: &mut [&mut Vec<Vec<i64>>], cols: &mut [&mut Vec<Vec<i64>>]) {
    if b == 0 {
        return;
    }
    let (g, x, y) = ext_gcd(a, b);
    let (ag, bg) = (a / g, b / g);
    for m in rows.iter_mut() {
        let (ri, rj) = (m[i].clone(), m[j].clone());
        for c in 0..ri.len() {
            m[i][c] = x * ri[c] + y * rj[c];
            m[j][c] = -bg * ri[c] + ag * rj[c];
        }
    }
    for m in cols.iter_mut() {
        for row in m.iter_mut() {
            let (ci, cj) = (row[i], row[j]);
            row[i] = ag * ci + bg * cj;
            row[j] = -y * ci + x * cj;
        }
    }
}

fn identity(d: usize) -> Vec<Vec<i64>> {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Upper-triangular Hermite basis of a full-rank lattice in `Z^d`.
///
/// Row `i` has zeros before column `i` and a positive pivot `rows[i][i]`.
/// Every coset of the lattice has exactly one representative in the box
/// `0 <= v_i < rows[i][i]`, obtained by [`HermiteBasis::reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteBasis {
    rows: Vec<Vec<i64>>,
}

impl HermiteBasis {
    /// Returns `None` when the vectors are not `d` linearly independent
    /// vectors of length `d`.
    pub fn new(basis: &[Vec<i64>]) -> Option<Self> {
        let d = basis.len();
        if d == 0 || basis.iter().any(|b| b.len() != d) {
            return None;
        }
        let mut m: Vec<Vec<i64>> = basis.to_vec();
        for col in 0..d {
            for r in col + 1..d {
                let (a, b) = (m[col][col], m[r][col]);
                gcd_step(col, r, a, b, &mut [&mut m], &mut []);
            }
            if m[col][col] == 0 {
                return None;
            }
            if m[col][col] < 0 {
                m[col].iter_mut().for_each(|x| *x = -*x);
            }
        }
        Some(HermiteBasis { rows: m })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Pivots `rows[i][i]`: the extents of the canonical representative box.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.dim()).map(|i| self.rows[i][i]).collect()
    }

    /// Lattice index `|det|`.
    pub fn index(&self) -> i64 {
        self.diagonal().iter().product()
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut w = v.to_vec();
        for i in 0..self.dim() {
            let q = w[i].div_euclid(self.rows[i][i]);
            if q != 0 {
                for (c, x) in self.rows[i].iter().enumerate() {
                    w[c] -= q * x;
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Row-major index of a canonical representative inside the box.
    pub fn rep_index(&self, rep: &[i64]) -> usize {
        let mut idx = 0usize;
        for (i, &x) in rep.iter().enumerate() {
            idx = idx * self.rows[i][i] as usize + x as usize;
        }
        idx
    }

    /// All canonical representatives in row-major order.
    pub fn representatives(&self) -> Vec<Vec<i64>> {
        let diag = self.diagonal();
        let mut out = Vec::with_capacity(self.index() as usize);
        let mut cur = vec![0i64; diag.len()];
        loop {
            out.push(cur.clone());
            let mut axis = diag.len();
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                cur[axis] += 1;
                if cur[axis] < diag[axis] {
                    break;
                }
                cur[axis] = 0;
            }
        }
    }

    /// Smallest `k > 0` per axis with `k * e_i` in the lattice.
    pub fn axis_periods(&self) -> Vec<i64> {
        let d = self.dim();
        let idx = self.index();
        (0..d)
            .map(|i| {
                let mut e = vec![0i64; d];
                (1..=idx)
                    .find(|&k| {
                        e[i] = k;
                        self.contains(&e)
                    })
                    .unwrap_or(idx)
            })
            .collect()
    }
}

/// A unimodular change of coordinates whose first basis vector is a given
/// primitive direction `p` (and optionally whose second is a given
/// complement `w`).  Coordinates of `v` are `(s, t, rest..)` with
/// `v = s*p + t*w + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    to: Vec<Vec<i64>>,
    from: Vec<Vec<i64>>,
}

impl Frame {
    /// `p` must be primitive.  When `w` is given, `{p, w}` must extend to a
    /// basis of `Z^d`; otherwise a complement is chosen.
    pub fn new(p: &[i64], w: Option<&[i64]>) -> Option<Self> {
        let d = p.len();
        if d < 2 || content(p) != 1 {
            return None;
        }
        if let Some(w) = w {
            if w.len() != d {
                return None;
            }
        }
        let ncols = if w.is_some() { 2 } else { 1 };
        let mut a: Vec<Vec<i64>> = (0..d)
            .map(|i| {
                let mut row = vec![p[i]];
                if let Some(w) = w {
                    row.push(w[i]);
                }
                row
            })
            .collect();
        let mut to = identity(d);
        let mut from = identity(d);
        for r in 1..d {
            let (x, y) = (a[0][0], a[r][0]);
            gcd_step(0, r, x, y, &mut [&mut a, &mut to], &mut [&mut from]);
        }
        if a[0][0] == -1 {
            a[0].iter_mut().for_each(|x| *x = -*x);
            to[0].iter_mut().for_each(|x| *x = -*x);
            from.iter_mut().for_each(|row| row[0] = -row[0]);
        }
        debug_assert_eq!(a[0][0], 1);
        if ncols == 2 {
            for r in 2..d {
                let (x, y) = (a[1][1], a[r][1]);
                gcd_step(1, r, x, y, &mut [&mut a, &mut to], &mut [&mut from]);
            }
            match a[1][1] {
                1 => {}
                -1 => {
                    a[1].iter_mut().for_each(|x| *x = -*x);
                    to[1].iter_mut().for_each(|x| *x = -*x);
                    from.iter_mut().for_each(|row| row[1] = -row[1]);
                }
                _ => return None,
            }
            // Clear the entry above the second pivot: row0 -= c * row1.
            let c = a[0][1];
            if c != 0 {
                a[0][0] -= c * a[1][0];
                a[0][1] -= c * a[1][1];
                let r1 = to[1].clone();
                for (x, y) in to[0].iter_mut().zip(&r1) {
                    *x -= c * y;
                }
                for row in from.iter_mut() {
                    row[1] += c * row[0];
                }
            }
        }
        Some(Frame { to, from })
    }

    pub fn dim(&self) -> usize {
        self.to.len()
    }

    pub fn coords(&self, v: &[i64]) -> Vec<i64> {
        mat_vec(&self.to, v)
    }

    pub fn point(&self, coords: &[i64]) -> Vec<i64> {
        mat_vec(&self.from, coords)
    }

    /// The frame seen through the coordinate reflection negating `axis`.
    pub fn mirrored(&self, axis: usize) -> Frame {
        let mut to = self.to.clone();
        for row in to.iter_mut() {
            row[axis] = -row[axis];
        }
        let mut from = self.from.clone();
        from[axis].iter_mut().for_each(|x| *x = -*x);
        Frame { to, from }
    }

    /// The complement direction (second basis vector).
    pub fn complement(&self) -> Vec<i64> {
        self.from.iter().map(|row| row[1]).collect()
    }
}

/// Coordinates on cosets of the rank-two sublattice `Z u + Z v`.
///
/// Every `w` is written uniquely as `z + a*u + b*v` with `z` the canonical
/// representative of its coset (an echelon reduction of `w`).
#[derive(Clone, Debug)]
pub struct PlaneLattice {
    u: Vec<i64>,
    v: Vec<i64>,
    h1: Vec<i64>,
    h2: Vec<i64>,
    j1: usize,
    j2: usize,
    // [h1; h2] = t * [u; v]
    t: [[i64; 2]; 2],
}

impl PlaneLattice {
    /// Returns `None` when `u` and `v` are linearly dependent.
    pub fn new(u: &[i64], v: &[i64]) -> Option<Self> {
        let d = u.len();
        if v.len() != d {
            return None;
        }
        let mut m = vec![u.to_vec(), v.to_vec()];
        let mut t = vec![vec![1i64, 0], vec![0, 1]];
        let j1 = (0..d).find(|&j| m[0][j] != 0 || m[1][j] != 0)?;
        if m[0][j1] == 0 {
            m.swap(0, 1);
            t.swap(0, 1);
        }
        let (a, b) = (m[0][j1], m[1][j1]);
        gcd_step(0, 1, a, b, &mut [&mut m, &mut t], &mut []);
        if m[0][j1] < 0 {
            m[0].iter_mut().for_each(|x| *x = -*x);
            t[0].iter_mut().for_each(|x| *x = -*x);
        }
        let j2 = (j1 + 1..d).find(|&j| m[1][j] != 0)?;
        if m[1][j2] < 0 {
            m[1].iter_mut().for_each(|x| *x = -*x);
            t[1].iter_mut().for_each(|x| *x = -*x);
        }
        Some(PlaneLattice {
            u: u.to_vec(),
            v: v.to_vec(),
            h1: m[0].clone(),
            h2: m[1].clone(),
            j1,
            j2,
            t: [[t[0][0], t[0][1]], [t[1][0], t[1][1]]],
        })
    }

    /// Returns `(z, a, b)` with `w = z + a*u + b*v`.
    pub fn split(&self, w: &[i64]) -> (Vec<i64>, i64, i64) {
        let q1 = w[self.j1].div_euclid(self.h1[self.j1]);
        let w1: Vec<i64> = w.iter().zip(&self.h1).map(|(x, h)| x - q1 * h).collect();
        let q2 = w1[self.j2].div_euclid(self.h2[self.j2]);
        let z: Vec<i64> = w1.iter().zip(&self.h2).map(|(x, h)| x - q2 * h).collect();
        let a = q1 * self.t[0][0] + q2 * self.t[1][0];
        let b = q1 * self.t[0][1] + q2 * self.t[1][1];
        (z, a, b)
    }

    pub fn join(&self, z: &[i64], a: i64, b: i64) -> Vec<i64> {
        z.iter().zip(self.u.iter().zip(&self.v)).map(|(x, (p, q))| x + a * p + b * q).collect()
    }
}

/// Solves `a*u + b*w = r` over the integers for linearly independent `u`, `w`.
pub fn solve_pair(u: &[i64], w: &[i64], r: &[i64]) -> Option<(i64, i64)> {
    let d = u.len();
    for i in 0..d {
        for j in i + 1..d {
            let det = u[i] as i128 * w[j] as i128 - u[j] as i128 * w[i] as i128;
            if det == 0 {
                continue;
            }
            let na = r[i] as i128 * w[j] as i128 - r[j] as i128 * w[i] as i128;
            let nb = u[i] as i128 * r[j] as i128 - u[j] as i128 * r[i] as i128;
            if na % det != 0 || nb % det != 0 {
                return None;
            }
            let (a, b) = ((na / det) as i64, (nb / det) as i64);
            let ok = (0..d).all(|k| a * u[k] + b * w[k] == r[k]);
            return ok.then_some((a, b));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for a in -12..=12 {
            for b in -12..=12 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert!(g >= 0);
                if a != 0 || b != 0 {
                    assert_eq!(a % g, 0);
                    assert_eq!(b % g, 0);
                }
            }
        }
    }

    #[test]
    fn primitive_part_sign() {
        assert_eq!(primitive_part(&[-2, 4]), Some((vec![1, -2], -2)));
        assert_eq!(primitive_part(&[0, 3]), Some((vec![0, 1], 3)));
        assert_eq!(primitive_part(&[0, 0]), None);
    }

    #[test]
    fn hermite_reduction_is_canonical() {
        let h = HermiteBasis::new(&[vec![1, 1], vec![3, 0]]).unwrap();
        assert_eq!(h.index(), 3);
        let reps = h.representatives();
        assert_eq!(reps.len(), 3);
        for x in -6..6 {
            for y in -6..6 {
                let r = h.reduce(&[x, y]);
                assert!(reps.contains(&r));
                // difference lies in the lattice: x - y = 0 mod 3
                assert_eq!((x - y - (r[0] - r[1])).rem_euclid(3), 0);
            }
        }
        assert_eq!(h.axis_periods(), vec![3, 3]);
        assert!(HermiteBasis::new(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn frame_is_unimodular() {
        for p in [vec![1, 0, 0], vec![2, 3, 5], vec![0, -1, 4], vec![3, -2]] {
            let f = Frame::new(&p, None).unwrap();
            let d = p.len();
            for i in 0..d {
                let mut e = vec![0; d];
                e[i] = 1;
                assert_eq!(f.coords(&f.point(&e)), e);
            }
            let mut e1 = vec![0; d];
            e1[0] = 1;
            assert_eq!(f.coords(&p), e1);
        }
        let f = Frame::new(&[1, 1], Some(&[0, 1])).unwrap();
        assert_eq!(f.coords(&[0, 1]), vec![0, 1]);
        assert_eq!(f.complement(), vec![0, 1]);
        assert!(Frame::new(&[1, 1], Some(&[2, 0])).is_none());
    }

    #[test]
    fn plane_lattice_round_trip() {
        let pl = PlaneLattice::new(&[1, -1], &[2, 0]).unwrap();
        let mut reps = std::collections::BTreeSet::new();
        for x in -5..5 {
            for y in -5..5 {
                let (z, a, b) = pl.split(&[x, y]);
                assert_eq!(pl.join(&z, a, b), vec![x, y]);
                reps.insert(z);
            }
        }
        assert_eq!(reps.len(), 2);
        let pl3 = PlaneLattice::new(&[0, 0, 1], &[1, 0, 0]).unwrap();
        let (z, a, b) = pl3.split(&[4, -3, 7]);
        assert_eq!(z, vec![0, -3, 0]);
        assert_eq!((a, b), (7, 4));
    }

    #[test]
    fn solve_pair_finds_intersections() {
        assert_eq!(solve_pair(&[1, 0, 0], &[0, 0, 1], &[3, 0, -2]), Some((3, -2)));
        assert_eq!(solve_pair(&[1, 0, 0], &[0, 0, 1], &[3, 1, -2]), None);
        assert_eq!(solve_pair(&[2, 0], &[0, 2], &[1, 0]), None);
    }
}
