//! 0-cells of the GIT complex: vertices of the arrangement of walls
//! `x_I = 1` (and coordinate facets `x_i = 0`) inside the hypersimplex
//! `Δ(2, n)`.
//!
//! The search walks the lattice of flats of the arrangement depth-first.
//! A flat is entered only through its greedy basis (constraints taken in
//! index order, each one independent of those before it), so every flat and
//! every vertex is produced exactly once and no dedup set is needed. At each
//! flat, all remaining constraints are reduced against its integer echelon
//! form; constraints whose reduced rows coincide become tight together and
//! yield one child. Lines are clipped to the unit box and cut directly.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::combinatorics::{basis_curves, curve_shapes, factorial, orbit_size, WeightVector};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::intersection::{intersect, intersect_symmetrized, IntersectionVector};
use crate::linalg::{rank, QMatrix};
use crate::rational::{qi, Rational};

/// Largest `n` enumerated without the expensive opt-in.
pub const MAX_CHEAP_N: usize = 7;
/// Hard ceiling (subset masks and constraint counts).
pub const MAX_N: usize = 10;

/// Canonical representative of the wall pair `{I, I^c}`: the smaller set,
/// and on equal size the one containing point 0.
pub fn canonical_wall(mask: u64, n: usize) -> u64 {
    let full = (1u64 << n) - 1;
    let comp = full & !mask;
    match mask.count_ones().cmp(&comp.count_ones()) {
        std::cmp::Ordering::Less => mask,
        std::cmp::Ordering::Greater => comp,
        std::cmp::Ordering::Equal => {
            if mask & 1 == 1 {
                mask
            } else {
                comp
            }
        }
    }
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// `"{1,2,5}"` with 1-based labels.
pub fn fmt_subset(mask: u64) -> String {
    let items: Vec<String> = mask_elements(mask)
        .into_iter()
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", items.join(","))
}

/// All walls of the arrangement for `n` points, one per pair `{I, I^c}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    pub n: usize,
    /// Canonical masks, sorted by `(|I|, lexicographic element list)`.
    pub walls: Vec<u64>,
}

impl WallSet {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::Domain(format!("wall sets supported for n <= {MAX_N}")));
        }
        let full = (1u64 << n) - 1;
        let mut walls: Vec<u64> = (1..full).filter(|&m| canonical_wall(m, n) == m).collect();
        walls.sort_by_key(|&m| (m.count_ones(), mask_elements(m)));
        Ok(WallSet { n, walls })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Below,
    On,
    Above,
}

/// Position of a point relative to every wall.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChamberSignature {
    pub signs: Vec<(u64, Side)>,
}

impl ChamberSignature {
    pub fn walls_on(&self) -> Vec<u64> {
        self.signs
            .iter()
            .filter(|(_, s)| *s == Side::On)
            .map(|(w, _)| *w)
            .collect()
    }
}

pub fn chamber_signature(x: &WeightVector) -> Result<ChamberSignature> {
    let walls = WallSet::new(x.n())?;
    let one = Rational::one();
    let signs = walls
        .walls
        .iter()
        .map(|&w| {
            let side = match x.sum_mask(w).cmp(&one) {
                std::cmp::Ordering::Less => Side::Below,
                std::cmp::Ordering::Equal => Side::On,
                std::cmp::Ordering::Greater => Side::Above,
            };
            (w, side)
        })
        .collect();
    Ok(ChamberSignature { signs })
}

/// A vertex of the GIT complex with every constraint tight at it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZeroCell {
    pub point: WeightVector,
    pub active_walls: Vec<u64>,
    pub active_zeros: Vec<usize>,
}

impl ZeroCell {
    /// Builds the cell at `point`, recording its full active set; fails if the
    /// active constraints (with `Σ x = 2`) do not have rank `n`.
    pub fn at(point: WeightVector) -> Result<Self> {
        let n = point.n();
        let walls = WallSet::new(n)?;
        let active_walls: Vec<u64> = walls
            .walls
            .iter()
            .copied()
            .filter(|&w| point.sum_mask(w).is_one())
            .collect();
        let active_zeros: Vec<usize> = (0..n).filter(|&i| point.entries()[i].is_zero()).collect();
        let cell = ZeroCell {
            point,
            active_walls,
            active_zeros,
        };
        if cell.constraint_rank() != n {
            return Err(Error::Domain(format!("{} is not a vertex", cell.point)));
        }
        Ok(cell)
    }

    /// Rows of the active system (`Σ x`, then walls, then zeros), without right-hand sides.
    pub fn constraint_matrix(&self) -> QMatrix {
        let n = self.point.n();
        let mut rows = vec![vec![qi(1); n]];
        rows.extend(self.active_walls.iter().map(|&w| indicator(w, n)));
        rows.extend(self.active_zeros.iter().map(|&i| indicator(1 << i, n)));
        QMatrix::from_rows(rows).expect("rows share length n")
    }

    pub fn constraint_rank(&self) -> usize {
        rank(&self.constraint_matrix())
    }

    /// `L_x` is formally zero when some weight equals 1.
    pub fn is_degenerate(&self) -> bool {
        self.point.has_unit_entry()
    }
}

fn indicator(mask: u64, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| if mask >> i & 1 == 1 { qi(1) } else { qi(0) })
        .collect()
}

impl fmt::Display for ZeroCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.point)
    }
}

// ---------------------------------------------------------------------------
// Integer row arithmetic for the search.

type Row = Vec<i64>;

fn gcd_row(row: &[i64]) -> i64 {
    row.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Divides by the content and makes the first nonzero coefficient positive.
fn normalize(row: &mut Row, ncoef: usize) {
    let g = gcd_row(row);
    if g > 1 {
        row.iter_mut().for_each(|v| *v /= g);
    }
    if let Some(lead) = row[..ncoef].iter().find(|v| **v != 0) {
        if *lead < 0 {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("integer overflow in wall elimination")
}

/// Reduces `row` against echelon rows (pivot, row), clearing every pivot column.
fn reduce(echelon: &[(usize, Row)], row: &Row) -> Row {
    let mut r = row.clone();
    for (p, e) in echelon {
        let c = r[*p];
        if c != 0 {
            let ep = e[*p];
            for (x, y) in r.iter_mut().zip(e) {
                *x = mul(ep, *x)
                    .checked_sub(mul(c, *y))
                    .expect("integer overflow in wall elimination");
            }
            let g = gcd_row(&r);
            if g > 1 {
                r.iter_mut().for_each(|v| *v /= g);
            }
        }
    }
    r
}

#[derive(Clone)]
struct Flat {
    echelon: Vec<(usize, Row)>,
    /// Constraints tight on the whole flat.
    closure: Vec<bool>,
    /// Index of the last basis constraint added (`None` at the root).
    last: Option<usize>,
}

struct Search {
    n: usize,
    /// `(coefficients…, rhs)` for walls then zeros.
    constraints: Vec<Row>,
}

impl Search {
    fn new(n: usize) -> Result<Self> {
        let walls = WallSet::new(n)?;
        let mut constraints: Vec<Row> = walls
            .walls
            .iter()
            .map(|&w| {
                let mut r: Row = (0..n).map(|i| (w >> i & 1) as i64).collect();
                r.push(1);
                r
            })
            .collect();
        for i in 0..n {
            let mut r = vec![0; n + 1];
            r[i] = 1;
            constraints.push(r);
        }
        Ok(Search { n, constraints })
    }

    fn root(&self) -> Flat {
        let mut sum = vec![1i64; self.n];
        sum.push(2);
        let echelon = vec![(0, sum)];
        let closure = self
            .constraints
            .iter()
            .map(|c| {
                let r = reduce(&echelon, c);
                r.iter().all(|v| *v == 0)
            })
            .collect();
        Flat {
            echelon,
            closure,
            last: None,
        }
    }

    /// Child flats of `flat`, each entered through its greedy basis.
    fn children(&self, flat: &Flat) -> Vec<Flat> {
        let ncoef = self.n;
        let start = flat.last.map_or(0, |l| l + 1);
        // Reduced row -> constraints that become tight when it is added.
        let mut groups: HashMap<Row, Vec<usize>> = HashMap::new();
        for (j, c) in self.constraints.iter().enumerate() {
            if flat.closure[j] {
                continue;
            }
            let mut r = reduce(&flat.echelon, c);
            if r[..ncoef].iter().all(|v| *v == 0) {
                continue; // parallel to the flat, never tight below it
            }
            normalize(&mut r, ncoef);
            groups.entry(r).or_default().push(j);
        }
        let mut out = Vec::new();
        for (row, members) in groups {
            let first = members[0];
            if first < start {
                continue;
            }
            let pivot = row[..ncoef].iter().position(|v| *v != 0).expect("nonzero");
            let mut echelon = flat.echelon.clone();
            echelon.push((pivot, row));
            let mut closure = flat.closure.clone();
            for &m in &members {
                closure[m] = true;
            }
            out.push(Flat {
                echelon,
                closure,
                last: Some(first),
            });
        }
        out.sort_by_key(|f| f.last);
        out
    }

    /// Vertices on a one-dimensional flat whose greedy basis ends after `flat.last`.
    fn cut_line(&self, flat: &Flat, out: &mut Vec<Vec<Rational>>) {
        let n = self.n;
        let start = flat.last.map_or(0, |l| l + 1);
        let Some(line) = Line::from_echelon(&flat.echelon, n) else {
            return;
        };
        let Some((lo, hi)) = line.box_interval() else {
            return;
        };
        // Parameter value -> smallest constraint index tight there.
        let mut cuts: BTreeMap<Frac, usize> = BTreeMap::new();
        for (j, c) in self.constraints.iter().enumerate() {
            if flat.closure[j] {
                continue;
            }
            let Some(t) = line.crossing(c) else {
                continue;
            };
            if t < lo || t > hi {
                continue;
            }
            cuts.entry(t).or_insert(j);
        }
        for (t, first) in cuts {
            if first >= start {
                out.push(line.point_at(&t));
            }
        }
    }

    fn dfs(&self, flat: Flat, out: &mut Vec<Vec<Rational>>) {
        let rank = flat.echelon.len();
        if rank + 1 == self.n {
            self.cut_line(&flat, out);
            return;
        }
        for child in self.children(&flat) {
            self.dfs(child, out);
        }
    }
}

/// Exact fraction with `i128` parts and positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn new(num: i128, den: i128) -> Frac {
        let s = if den < 0 { -1 } else { 1 };
        let g = num.gcd(&den).max(1);
        Frac {
            num: s * num / g,
            den: s * den / g,
        }
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// `x(t) = (base + t·dir) / scale` with integer vectors.
struct Line {
    base: Vec<i128>,
    dir: Vec<i128>,
    scale: i128,
}

impl Line {
    /// Parametrizes the solution line of an echelon system of rank `n − 1`.
    fn from_echelon(echelon: &[(usize, Row)], n: usize) -> Option<Line> {
        // Reduced row echelon form by back elimination.
        let mut rows: Vec<(usize, Vec<i128>)> = echelon
            .iter()
            .map(|(p, r)| (*p, r.iter().map(|&v| v as i128).collect()))
            .collect();
        for k in (0..rows.len()).rev() {
            let (pk, rk) = rows[k].clone();
            for (_, r) in rows.iter_mut().take(k) {
                let c = r[pk];
                if c != 0 {
                    let e = rk[pk];
                    for (x, y) in r.iter_mut().zip(&rk) {
                        *x = e * *x - c * *y;
                    }
                    let g = r.iter().fold(0i128, |g, v| g.gcd(v));
                    if g > 1 {
                        r.iter_mut().for_each(|v| *v /= g);
                    }
                }
            }
        }
        let pivots: Vec<usize> = rows.iter().map(|(p, _)| *p).collect();
        let free = (0..n).find(|c| !pivots.contains(c))?;
        let scale = rows.iter().fold(1i128, |l, (p, r)| l.lcm(&r[*p].abs()));
        let mut base = vec![0i128; n];
        let mut dir = vec![0i128; n];
        dir[free] = scale;
        for (p, r) in &rows {
            let m = scale / r[*p];
            base[*p] = r[n] * m;
            dir[*p] = -r[free] * m;
        }
        Some(Line { base, dir, scale })
    }

    /// Parameter range keeping every coordinate in `[0, 1]`.
    fn box_interval(&self) -> Option<(Frac, Frac)> {
        let mut lo: Option<Frac> = None;
        let mut hi: Option<Frac> = None;
        for (b, d) in self.base.iter().zip(&self.dir) {
            if *d == 0 {
                if *b < 0 || *b > self.scale {
                    return None;
                }
                continue;
            }
            // 0 <= b + t d <= scale
            let a = Frac::new(-b, *d);
            let c = Frac::new(self.scale - b, *d);
            let (l, h) = if *d > 0 { (a, c) } else { (c, a) };
            lo = Some(lo.map_or(l, |x| x.max(l)));
            hi = Some(hi.map_or(h, |x| x.min(h)));
        }
        let (lo, hi) = (lo?, hi?);
        (lo <= hi).then_some((lo, hi))
    }

    /// Parameter where the constraint `c·x = rhs` is met, if the line is not parallel to it.
    fn crossing(&self, c: &Row) -> Option<Frac> {
        let n = self.base.len();
        let cd: i128 = (0..n).map(|i| c[i] as i128 * self.dir[i]).sum();
        if cd == 0 {
            return None;
        }
        let cb: i128 = (0..n).map(|i| c[i] as i128 * self.base[i]).sum();
        Some(Frac::new(c[n] as i128 * self.scale - cb, cd))
    }

    fn point_at(&self, t: &Frac) -> Vec<Rational> {
        self.base
            .iter()
            .zip(&self.dir)
            .map(|(b, d)| {
                Rational::new(
                    BigInt::from(b * t.den + t.num * d),
                    BigInt::from(self.scale * t.den),
                )
            })
            .collect()
    }
}

fn check_n(n: usize, expensive: bool) -> Result<()> {
    let cap = if expensive { MAX_N } else { MAX_CHEAP_N };
    if n < 4 || n > cap {
        let hint = if !expensive && n <= MAX_N {
            " (larger n needs the expensive opt-in)"
        } else {
            ""
        };
        return Err(Error::Domain(format!(
            "0-cell enumeration supports 4 <= n <= {cap}, got {n}{hint}"
        )));
    }
    Ok(())
}

/// All 0-cells for `4 ≤ n ≤ 7`, sorted by coordinate vector.
pub fn enumerate_zero_cells(n: usize) -> Result<Vec<ZeroCell>> {
    enumerate_zero_cells_with(n, false, Execution::default())
}

/// As [`enumerate_zero_cells`]; `expensive` lifts the bound to [`MAX_N`].
pub fn enumerate_zero_cells_with(n: usize, expensive: bool, exec: Execution) -> Result<Vec<ZeroCell>> {
    check_n(n, expensive)?;
    let search = Search::new(n)?;
    // Fan out over the flats two levels below the root.
    let mut frontier = Vec::new();
    for child in search.children(&search.root()) {
        if child.echelon.len() + 1 == n {
            frontier.push(child);
        } else {
            frontier.extend(search.children(&child));
        }
    }
    let chunks = exec.map(frontier, |flat| {
        let mut out = Vec::new();
        search.dfs(flat, &mut out);
        out
    });
    let mut points: Vec<Vec<Rational>> = chunks.into_iter().flatten().collect();
    points.sort();
    debug_assert!(points.windows(2).all(|w| w[0] != w[1]), "duplicate vertex");
    points.dedup();
    let cells = exec.map(points, |p| {
        let w = WeightVector::new(p)?;
        ZeroCell::at(w)
    });
    cells.into_iter().collect()
}

/// An `S_n`-orbit of 0-cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCellOrbit {
    /// Sorted-descending representative.
    pub representative: WeightVector,
    pub orbit_size: u64,
    /// Cells of the orbit found by the enumerator.
    pub members: usize,
}

/// Groups cells into orbits, representatives in descending lexicographic order.
pub fn group_orbits(cells: &[ZeroCell]) -> Vec<ZeroCellOrbit> {
    let mut groups: BTreeMap<WeightVector, usize> = BTreeMap::new();
    for c in cells {
        *groups.entry(c.point.sorted_descending()).or_default() += 1;
    }
    groups
        .into_iter()
        .rev()
        .map(|(rep, members)| ZeroCellOrbit {
            orbit_size: orbit_size(&rep),
            representative: rep,
            members,
        })
        .collect()
}

pub fn zero_cell_orbits(n: usize) -> Result<Vec<ZeroCellOrbit>> {
    Ok(group_orbits(&enumerate_zero_cells(n)?))
}

/// Intersection data of one GIT cone generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorVector {
    pub cell: WeightVector,
    /// Orbit size in symmetric mode, 1 otherwise.
    pub orbit_size: u64,
    /// Symmetric mode: `S_x · C` per shape. Otherwise: `L_x · C_i` per basis curve.
    pub values: Vec<Rational>,
    /// Symmetric mode: `S_x · C / (n−1)!`.
    pub reduced: Option<IntersectionVector>,
    /// Some weight equals 1, so the bundle is formally zero.
    pub degenerate: bool,
}

pub fn git_cone_generators(n: usize, symmetric: bool) -> Result<Vec<GeneratorVector>> {
    let cells = enumerate_zero_cells(n)?;
    if symmetric {
        let reduce_by = qi(factorial(n - 1) as i64);
        group_orbits(&cells)
            .into_iter()
            .map(|o| {
                let full = IntersectionVector::from_fn(n, |s| intersect_symmetrized(&o.representative, s))?;
                let reduced = IntersectionVector {
                    n,
                    values: full.values.iter().map(|(s, v)| (*s, v / &reduce_by)).collect(),
                };
                Ok(GeneratorVector {
                    degenerate: o.representative.has_unit_entry(),
                    cell: o.representative,
                    orbit_size: o.orbit_size,
                    values: full.entries(),
                    reduced: Some(reduced),
                })
            })
            .collect()
    } else {
        let curves = if n >= 5 {
            basis_curves(n)?
        } else {
            curve_shapes(n).iter().map(|s| s.consecutive_class()).collect()
        };
        cells
            .into_iter()
            .map(|c| {
                let values = curves
                    .iter()
                    .map(|cv| intersect(&c.point, cv))
                    .collect::<Result<_>>()?;
                Ok(GeneratorVector {
                    degenerate: c.is_degenerate(),
                    cell: c.point,
                    orbit_size: 1,
                    values,
                    reduced: None,
                })
            })
            .collect()
    }
}
