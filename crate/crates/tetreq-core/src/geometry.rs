//! Sweep-line geometry of a four-line arrangement.
//!
//! Four straight lines in general position meet in six vertices, each
//! labeled by its pair of line ids. A sweeping line of fixed direction hits
//! the vertices in a direction-dependent order; translating vertices to
//! their complementary pair labels turns each order into a chain on
//! `C(4,2)`, which is always admissible and therefore selects a class of
//! `B(4,2)`. For each triangle of the arrangement the hit order of its three
//! corners, together with its traversal sense (clockwise gives `S`,
//! counterclockwise gives `S~`), produces one operator letter; a direction
//! thus reproduces one of the eight equations.

use alloc::string::String;
use alloc::vec::Vec;

use crate::bruhat::{self, Tuple};
use crate::math;
use crate::word::{OpLetter, SpaceLabel, WordError};

#[derive(Debug, thiserror::Error)]
pub enum GeomError {
    #[error("line {0} has zero normal")]
    ZeroNormal(u8),
    #[error("lines {0} and {1} are parallel (or nearly so)")]
    Parallel(u8, u8),
    #[error("lines {0}, {1}, {2} are concurrent (or nearly so)")]
    Concurrent(u8, u8, u8),
    #[error("angle {0} is within tolerance of a critical direction")]
    CriticalAngle(f64),
    #[error("a sweep order failed admissibility; the geometry is inconsistent")]
    Inadmissible,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Bruhat(#[from] bruhat::BruhatError),
}

/// Reject directions within this angular distance of a critical direction.
pub const ANGLE_TOL: f64 = 1e-9;

/// Relative tolerance for the degeneracy checks on an arrangement.
const DEGENERACY_TOL: f64 = 1e-9;

/// `a x + b y = c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub id: u8,
}

/// Four lines in general position: pairwise non-parallel, no three
/// concurrent.
#[derive(Clone, Debug)]
pub struct Arrangement {
    lines: [Line; 4],
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub pair: SpaceLabel,
    pub x: f64,
    pub y: f64,
    pub complement: SpaceLabel,
}

/// A direction together with the vertex order it induces.
#[derive(Clone, Debug)]
pub struct SweepOrder {
    pub theta: f64,
    pub order: Vec<SpaceLabel>,
}

impl SweepOrder {
    /// The chain of complement labels, as Bruhat tuples.
    pub fn complement_chain(&self, arr: &Arrangement) -> Vec<Tuple> {
        let verts = vertices_unchecked(arr);
        self.order
            .iter()
            .map(|pair| {
                let v = verts.iter().find(|v| v.pair == *pair).unwrap();
                let c = v.complement;
                Tuple::new(alloc::vec![c.first(), c.second()]).unwrap()
            })
            .collect()
    }
}

impl Arrangement {
    pub fn new(coeffs: [(f64, f64, f64); 4]) -> Result<Self, GeomError> {
        let lines = [
            Line { a: coeffs[0].0, b: coeffs[0].1, c: coeffs[0].2, id: 1 },
            Line { a: coeffs[1].0, b: coeffs[1].1, c: coeffs[1].2, id: 2 },
            Line { a: coeffs[2].0, b: coeffs[2].1, c: coeffs[2].2, id: 3 },
            Line { a: coeffs[3].0, b: coeffs[3].1, c: coeffs[3].2, id: 4 },
        ];
        let arr = Self { lines };
        arr.validate()?;
        Ok(arr)
    }

    pub fn lines(&self) -> &[Line; 4] {
        &self.lines
    }

    fn validate(&self) -> Result<(), GeomError> {
        for l in &self.lines {
            if math::hypot(l.a, l.b) == 0.0 {
                return Err(GeomError::ZeroNormal(l.id));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                let (li, lj) = (&self.lines[i], &self.lines[j]);
                let det = li.a * lj.b - lj.a * li.b;
                let scale = math::hypot(li.a, li.b) * math::hypot(lj.a, lj.b);
                if math::abs(det) <= DEGENERACY_TOL * scale {
                    return Err(GeomError::Parallel(li.id, lj.id));
                }
            }
        }
        // no three concurrent: the vertex of lines i,j must avoid line k
        for i in 0..4 {
            for j in i + 1..4 {
                let (x, y) = intersect(&self.lines[i], &self.lines[j]);
                for k in 0..4 {
                    if k == i || k == j {
                        continue;
                    }
                    let lk = &self.lines[k];
                    let dist = math::abs(lk.a * x + lk.b * y - lk.c) / math::hypot(lk.a, lk.b);
                    let scale = math::hypot(x, y).max(1.0);
                    if dist <= DEGENERACY_TOL * scale {
                        return Err(GeomError::Concurrent(
                            self.lines[i].id,
                            self.lines[j].id,
                            lk.id,
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

fn intersect(l1: &Line, l2: &Line) -> (f64, f64) {
    let det = l1.a * l2.b - l2.a * l1.b;
    let x = (l1.c * l2.b - l2.c * l1.b) / det;
    let y = (l1.a * l2.c - l2.a * l1.c) / det;
    (x, y)
}

fn complement_of(pair: SpaceLabel) -> SpaceLabel {
    let mut rest = [0u8; 2];
    let mut at = 0;
    for p in 1..=4u8 {
        if p != pair.first() && p != pair.second() {
            rest[at] = p;
            at += 1;
        }
    }
    SpaceLabel::new(rest[0], rest[1]).unwrap()
}

fn vertices_unchecked(arr: &Arrangement) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            let (x, y) = intersect(&arr.lines[i], &arr.lines[j]);
            let pair = SpaceLabel::new(arr.lines[i].id, arr.lines[j].id).unwrap();
            out.push(Vertex { pair, x, y, complement: complement_of(pair) });
        }
    }
    out
}

/// The six labeled vertices, ordered by pair label.
pub fn vertices(arr: &Arrangement) -> Result<Vec<Vertex>, GeomError> {
    arr.validate()?;
    Ok(vertices_unchecked(arr))
}

/// All directions (mod pi, in `[0, pi)`) at which two distinct vertices
/// have equal projection. Between consecutive critical angles the sweep
/// order is constant.
pub fn critical_angles(arr: &Arrangement) -> Result<Vec<f64>, GeomError> {
    let verts = vertices(arr)?;
    let mut angles: Vec<f64> = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let dx = verts[j].x - verts[i].x;
            let dy = verts[j].y - verts[i].y;
            // theta with cos(theta) dx + sin(theta) dy = 0
            let mut theta = math::atan2(-dx, dy);
            while theta < 0.0 {
                theta += core::f64::consts::PI;
            }
            while theta >= core::f64::consts::PI {
                theta -= core::f64::consts::PI;
            }
            angles.push(theta);
        }
    }
    angles.sort_by(f64::total_cmp);
    // dedup with wraparound (0 and pi are the same direction family)
    let mut out: Vec<f64> = Vec::new();
    for a in angles {
        if out.iter().all(|&b| math::abs(a - b) > ANGLE_TOL) {
            out.push(a);
        }
    }
    if out.len() > 1 {
        let first = out[0];
        let last = *out.last().unwrap();
        if math::abs(last - first - core::f64::consts::PI) <= ANGLE_TOL {
            out.pop();
        }
    }
    Ok(out)
}

/// Vertices sorted by ascending projection onto `(cos theta, sin theta)`.
pub fn sweep_order(arr: &Arrangement, theta: f64) -> Result<SweepOrder, GeomError> {
    let criticals = critical_angles(arr)?;
    let pi = core::f64::consts::PI;
    let mut reduced = theta % pi;
    if reduced < 0.0 {
        reduced += pi;
    }
    for &c in &criticals {
        let d = math::abs(reduced - c);
        if d <= ANGLE_TOL || math::abs(d - pi) <= ANGLE_TOL {
            return Err(GeomError::CriticalAngle(theta));
        }
    }
    let verts = vertices_unchecked(arr);
    let (cos, sin) = (math::cos(theta), math::sin(theta));
    let mut keyed: Vec<(f64, SpaceLabel)> =
        verts.iter().map(|v| (v.x * cos + v.y * sin, v.pair)).collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(SweepOrder { theta, order: keyed.into_iter().map(|(_, p)| p).collect() })
}

/// One report row per direction sector.
#[derive(Clone, Debug)]
pub struct SectorReport {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub theta_mid: f64,
    pub order: Vec<SpaceLabel>,
    /// The complement-labeled chain.
    pub chain: Vec<Tuple>,
    /// Serialized representative of the chain's Bruhat class.
    pub class_representative: String,
    pub letters: Vec<OpLetter>,
}

/// Sweep every direction sector, translate orders to chains, validate
/// admissibility, and map each to its class in `B(4,2)`. Sectors are
/// reported by ascending start angle over the full circle.
///
/// Admissibility of the chains depends on the line labeling: on every line
/// the middle-indexed crossing must also be the geometric middle (as it is
/// in the reference picture). With a labeling that breaks this, some sweep
/// order translates to an inadmissible chain and the function reports
/// [`GeomError::Inadmissible`].
pub fn classify_orders(arr: &Arrangement) -> Result<Vec<SectorReport>, GeomError> {
    let criticals = critical_angles(arr)?;
    let pi = core::f64::consts::PI;
    let mut bounds: Vec<f64> = criticals.iter().flat_map(|&c| [c, c + pi]).collect();
    bounds.sort_by(f64::total_cmp);
    let classes = bruhat::bruhat_classes(4, 2)?;

    let mut out = Vec::with_capacity(bounds.len());
    for i in 0..bounds.len() {
        let lo = bounds[i];
        let hi = if i + 1 < bounds.len() { bounds[i + 1] } else { bounds[0] + 2.0 * pi };
        let mid = 0.5 * (lo + hi);
        let order = sweep_order(arr, mid)?;
        let chain = order.complement_chain(arr);
        if !bruhat::is_admissible(&chain, 4, 2)? {
            return Err(GeomError::Inadmissible);
        }
        let class = bruhat::class_of(&classes, &chain).ok_or(GeomError::Inadmissible)?;
        let letters = equation_from_direction(arr, mid)?;
        out.push(SectorReport {
            theta_lo: lo,
            theta_hi: hi,
            theta_mid: mid,
            order: order.order,
            chain,
            class_representative: class.representative.serialize(),
            letters,
        });
    }
    Ok(out)
}

/// The four operator letters selected by a direction, one per triangle of
/// the arrangement, ordered by ascending line triple.
///
/// For the triangle of lines `{i,j,k}` the three corner labels are written
/// in the order the sweeping line hits them; a clockwise traversal gives an
/// `S` letter, a counterclockwise one gives `S~`. The orientation of each
/// written pair is then forced by the letter pattern.
pub fn equation_from_direction(
    arr: &Arrangement,
    theta: f64,
) -> Result<Vec<OpLetter>, GeomError> {
    // reject near-critical directions like sweep_order does
    let _ = sweep_order(arr, theta)?;
    let verts = vertices_unchecked(arr);
    let (cos, sin) = (math::cos(theta), math::sin(theta));
    let find = |a: u8, b: u8| {
        verts
            .iter()
            .find(|v| v.pair == SpaceLabel::new(a, b).unwrap())
            .unwrap()
            .clone()
    };
    let mut letters = Vec::with_capacity(4);
    for l in (1..=4u8).rev() {
        // the triangle of the three lines other than l, i.e. triple index l
        let mut ids: Vec<u8> = (1..=4).filter(|&p| p != l).collect();
        ids.sort_unstable();
        let (p, q, r) = (ids[0], ids[1], ids[2]);
        let mut corners = [find(p, q), find(p, r), find(q, r)];
        corners.sort_by(|u, v| (u.x * cos + u.y * sin).total_cmp(&(v.x * cos + v.y * sin)));
        let [v1, v2, v3] = corners;
        let cross = (v2.x - v1.x) * (v3.y - v2.y) - (v2.y - v1.y) * (v3.x - v2.x);
        let sets = [v1.pair, v2.pair, v3.pair];
        let letter = if cross < 0.0 {
            // clockwise: S_(ij)(ik)(jk); i is common to the first two corners
            let i = common_point(&sets[0], &sets[1]);
            let j = other_point(&sets[0], i);
            let k = other_point(&sets[1], i);
            OpLetter::s(
                SpaceLabel::new(i, j).unwrap(),
                SpaceLabel::new(i, k).unwrap(),
                SpaceLabel::new(j, k).unwrap(),
            )?
        } else {
            // counterclockwise: S~_(jk)(ik)(ij); i is common to the last two
            let i = common_point(&sets[1], &sets[2]);
            let k = other_point(&sets[1], i);
            let j = other_point(&sets[2], i);
            OpLetter::stilde(
                SpaceLabel::new(j, k).unwrap(),
                SpaceLabel::new(i, k).unwrap(),
                SpaceLabel::new(i, j).unwrap(),
            )?
        };
        letters.push(letter);
    }
    // triple index runs 4,3,2,1 above; ascending line triple means
    // {1,2,3}, {1,2,4}, {1,3,4}, {2,3,4}, which is l = 4,3,2,1
    Ok(letters)
}

/// The frozen reference arrangement: four lines forming a small central
/// triangle, labeled in decreasing slope order. Its sweep orders realize
/// all eight classes of `B(4,2)`.
pub fn reference_arrangement() -> Arrangement {
    Arrangement::new([
        (50.0, -31.0, 94.0),
        (11.0, -50.0, -99.0),
        (27.0, 100.0, 517.0),
        (100.0, 39.0, 1039.0),
    ])
    .expect("reference arrangement is in general position")
}

/// The eight named sweep directions of the reference arrangement, as
/// `(label, angle)`. The `r`-labeled direction is the antipode of its
/// partner.
pub fn reference_directions() -> [(&'static str, f64); 8] {
    use core::f64::consts::PI;
    let d5 = crate::math::atan2(-3.0, 2.0);
    [
        ("1", 0.0),
        ("2", PI / 4.0),
        ("3", PI / 2.0),
        ("5", d5),
        ("1r", PI),
        ("2r", PI + PI / 4.0),
        ("3r", 3.0 * PI / 2.0),
        ("5r", d5 + PI),
    ]
}

fn common_point(a: &SpaceLabel, b: &SpaceLabel) -> u8 {
    let inter = a.point_set() & b.point_set();
    debug_assert_eq!(inter.count_ones(), 1);
    inter.trailing_zeros() as u8
}

fn other_point(l: &SpaceLabel, not: u8) -> u8 {
    if l.first() == not {
        l.second()
    } else {
        l.first()
    }
}
