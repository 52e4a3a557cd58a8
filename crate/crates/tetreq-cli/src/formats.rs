//! Line-oriented text formats for tensors and arrangements.
//!
//! Every document starts with a format-version line. Blank lines and lines
//! starting with `#` are ignored. Complex entries are `(re, im)` pairs and
//! indices are 0-based; omitted entries are zero.
//!
//! Tensor files (`tetreq-tensor 1`):
//!
//! ```text
//! tetreq-tensor 1
//! kind S            # S | Stilde | Q | R | M
//! m 2               # S/Stilde/Q: space dimension
//! entry 0,0,0 0,0,0 1 0     # entry IN OUT RE IM; row = in, col = out
//! ```
//!
//! Kind `R` declares `m` (external index range) and `n` (leg dimension) and
//! its entries read `entry PAIR,ALPHA,A1,A2 B1,B2 RE IM`, where `PAIR` is
//! 0, 1, 2 for the space pairs (12), (13), (23). When only pair 0 carries
//! entries, the same matrices are used for all three pairs. Kind `M`
//! declares `d` (family size) and `n` and its entries read
//! `entry I,ROW COL RE IM`.
//!
//! Arrangement files (`tetreq-arrangement 1`) hold four `line A B C` rows
//! meaning `A x + B y = C`.

use num_complex::Complex64;
use tetreq_core::geometry::Arrangement;
use tetreq_core::tensor::CMatrix;
use tetreq_core::verify::{PairwiseR, RepFamily};

use crate::CliError;

pub const TENSOR_MAGIC: &str = "tetreq-tensor";
pub const ARRANGEMENT_MAGIC: &str = "tetreq-arrangement";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TensorKind {
    S,
    Stilde,
    Q,
    R,
    M,
}

/// A parsed tensor document.
#[derive(Clone, Debug)]
pub enum TensorFile {
    /// `S`, `Stilde` (m^3 legs) or `Q` (m^2 legs) as a square matrix.
    Operator { kind: TensorKind, m: usize, matrix: CMatrix },
    /// Indexed pair matrices for the obstruction relation.
    Pairwise(PairwiseR),
    /// A family of `d` matrices on an `n`-dimensional space.
    Family(RepFamily),
}

fn bad(path: &str, line_no: usize, msg: impl Into<String>) -> CliError {
    CliError::Parse(format!("{path}:{line_no}: {}", msg.into()))
}

fn meaningful_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_indices(field: &str, path: &str, line_no: usize) -> Result<Vec<usize>, CliError> {
    field
        .split(',')
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| bad(path, line_no, format!("bad index list {field:?}")))
        })
        .collect()
}

fn parse_f64(field: &str, path: &str, line_no: usize) -> Result<f64, CliError> {
    let v: f64 = field
        .parse()
        .map_err(|_| bad(path, line_no, format!("bad number {field:?}")))?;
    if !v.is_finite() {
        return Err(bad(path, line_no, "non-finite entry"));
    }
    Ok(v)
}

struct RawEntry {
    line_no: usize,
    input: Vec<usize>,
    output: Vec<usize>,
    value: Complex64,
}

pub fn parse_tensor(path: &str, text: &str) -> Result<TensorFile, CliError> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, l)) if l == format!("{TENSOR_MAGIC} 1") => {}
        Some((n, l)) => return Err(bad(path, n, format!("expected `{TENSOR_MAGIC} 1`, got {l:?}"))),
        None => return Err(CliError::Parse(format!("{path}: empty tensor file"))),
    }

    let mut kind: Option<TensorKind> = None;
    let mut dims: Vec<(String, usize)> = Vec::new();
    let mut entries: Vec<RawEntry> = Vec::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("kind") => {
                let value = fields.next().ok_or_else(|| bad(path, line_no, "missing kind"))?;
                kind = Some(match value {
                    "S" => TensorKind::S,
                    "Stilde" => TensorKind::Stilde,
                    "Q" => TensorKind::Q,
                    "R" => TensorKind::R,
                    "M" => TensorKind::M,
                    other => return Err(bad(path, line_no, format!("unknown kind {other:?}"))),
                });
            }
            Some(name @ ("m" | "n" | "d")) => {
                let value = fields
                    .next()
                    .and_then(|v| v.parse::<usize>().ok())
                    .ok_or_else(|| bad(path, line_no, format!("bad {name} value")))?;
                dims.push((name.to_string(), value));
            }
            Some("entry") => {
                let input = fields.next().ok_or_else(|| bad(path, line_no, "missing indices"))?;
                let output = fields.next().ok_or_else(|| bad(path, line_no, "missing indices"))?;
                let re = fields.next().ok_or_else(|| bad(path, line_no, "missing re"))?;
                let im = fields.next().ok_or_else(|| bad(path, line_no, "missing im"))?;
                if fields.next().is_some() {
                    return Err(bad(path, line_no, "trailing fields on entry"));
                }
                entries.push(RawEntry {
                    line_no,
                    input: parse_indices(input, path, line_no)?,
                    output: parse_indices(output, path, line_no)?,
                    value: Complex64::new(
                        parse_f64(re, path, line_no)?,
                        parse_f64(im, path, line_no)?,
                    ),
                });
            }
            Some(other) => return Err(bad(path, line_no, format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    let kind = kind.ok_or_else(|| CliError::Parse(format!("{path}: missing kind")))?;
    let dim = |name: &str| -> Result<usize, CliError> {
        dims.iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
            .ok_or_else(|| CliError::Parse(format!("{path}: missing `{name}`")))
    };

    match kind {
        TensorKind::S | TensorKind::Stilde | TensorKind::Q => {
            let m = dim("m")?;
            if m == 0 || m > tetreq_core::tensor::MAX_M {
                return Err(CliError::Parse(format!(
                    "{path}: m must be in 1..={}",
                    tetreq_core::tensor::MAX_M
                )));
            }
            let legs = if kind == TensorKind::Q { 2 } else { 3 };
            let side = m.pow(legs);
            let mut matrix = CMatrix::zeros(side);
            for e in entries {
                if e.input.len() != legs as usize || e.output.len() != legs as usize {
                    return Err(bad(path, e.line_no, format!("expected {legs} indices per side")));
                }
                let flat = |idx: &[usize]| -> Result<usize, CliError> {
                    idx.iter().try_fold(0usize, |acc, &i| {
                        if i >= m {
                            Err(bad(path, e.line_no, "index out of range"))
                        } else {
                            Ok(acc * m + i)
                        }
                    })
                };
                matrix.set(flat(&e.input)?, flat(&e.output)?, e.value);
            }
            Ok(TensorFile::Operator { kind, m, matrix })
        }
        TensorKind::R => {
            let m = dim("m")?;
            let n = dim("n")?;
            if m == 0 || m > 8 || n == 0 || n > tetreq_core::verify::MAX_LEG_DIM {
                return Err(CliError::Parse(format!(
                    "{path}: need 1 <= m <= 8 and 1 <= n <= {}",
                    tetreq_core::verify::MAX_LEG_DIM
                )));
            }
            let side = n * n;
            let mut mats = vec![vec![CMatrix::zeros(side); m]; 3];
            let mut seen_pair = [false; 3];
            for e in entries {
                if e.input.len() != 4 || e.output.len() != 2 {
                    return Err(bad(path, e.line_no, "R entries read PAIR,ALPHA,A1,A2 B1,B2"));
                }
                let (pair, alpha, a1, a2) = (e.input[0], e.input[1], e.input[2], e.input[3]);
                let (b1, b2) = (e.output[0], e.output[1]);
                if pair >= 3 || alpha >= m || a1 >= n || a2 >= n || b1 >= n || b2 >= n {
                    return Err(bad(path, e.line_no, "index out of range"));
                }
                seen_pair[pair] = true;
                mats[pair][alpha].set(a1 * n + a2, b1 * n + b2, e.value);
            }
            if seen_pair[0] && !seen_pair[1] && !seen_pair[2] {
                mats[1] = mats[0].clone();
                mats[2] = mats[0].clone();
            }
            let pr = PairwiseR::new(m, n, mats[0].clone(), mats[1].clone(), mats[2].clone())
                .map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
            Ok(TensorFile::Pairwise(pr))
        }
        TensorKind::M => {
            let d = dim("d")?;
            let n = dim("n")?;
            if d == 0 || d > 16 || n == 0 || n > 64 {
                return Err(CliError::Parse(format!(
                    "{path}: need 1 <= d <= 16 and 1 <= n <= 64"
                )));
            }
            let mut mats = vec![CMatrix::zeros(n); d];
            for e in entries {
                if e.input.len() != 2 || e.output.len() != 1 {
                    return Err(bad(path, e.line_no, "M entries read I,ROW COL"));
                }
                let (i, row, col) = (e.input[0], e.input[1], e.output[0]);
                if i >= d || row >= n || col >= n {
                    return Err(bad(path, e.line_no, "index out of range"));
                }
                mats[i].set(row, col, e.value);
            }
            let fam = RepFamily::new(d, n, mats)
                .map_err(|e| CliError::Parse(format!("{path}: {e}")))?;
            Ok(TensorFile::Family(fam))
        }
    }
}

pub fn parse_arrangement(path: &str, text: &str) -> Result<Arrangement, CliError> {
    let mut lines = meaningful_lines(text);
    match lines.next() {
        Some((_, l)) if l == format!("{ARRANGEMENT_MAGIC} 1") => {}
        Some((n, l)) => {
            return Err(bad(path, n, format!("expected `{ARRANGEMENT_MAGIC} 1`, got {l:?}")))
        }
        None => return Err(CliError::Parse(format!("{path}: empty arrangement file"))),
    }
    let mut coeffs: Vec<(f64, f64, f64)> = Vec::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        match fields.next() {
            Some("line") => {
                let mut take = || -> Result<f64, CliError> {
                    let f = fields
                        .next()
                        .ok_or_else(|| bad(path, line_no, "line needs A B C"))?;
                    parse_f64(f, path, line_no)
                };
                coeffs.push((take()?, take()?, take()?));
            }
            Some(other) => return Err(bad(path, line_no, format!("unknown directive {other:?}"))),
            None => {}
        }
    }
    if coeffs.len() != 4 {
        return Err(CliError::Parse(format!(
            "{path}: expected exactly 4 lines, found {}",
            coeffs.len()
        )));
    }
    Arrangement::new([coeffs[0], coeffs[1], coeffs[2], coeffs[3]])
        .map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

/// Render a square operator matrix as a tensor document.
pub fn render_operator(kind: TensorKind, m: usize, matrix: &CMatrix) -> String {
    let legs = if kind == TensorKind::Q { 2 } else { 3 };
    let kind_name = match kind {
        TensorKind::S => "S",
        TensorKind::Stilde => "Stilde",
        TensorKind::Q => "Q",
        _ => unreachable!("only operator kinds are rendered"),
    };
    let mut out = format!("{TENSOR_MAGIC} 1\nkind {kind_name}\nm {m}\n");
    let unflatten = |mut x: usize| {
        let mut idx = vec![0usize; legs];
        for slot in (0..legs).rev() {
            idx[slot] = x % m;
            x /= m;
        }
        idx.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    };
    for row in 0..matrix.dim() {
        for col in 0..matrix.dim() {
            let v = matrix.get(row, col);
            if v == Complex64::ZERO {
                continue;
            }
            out.push_str(&format!("entry {} {} {} {}\n", unflatten(row), unflatten(col), v.re, v.im));
        }
    }
    out
}
