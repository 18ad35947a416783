//! Point-vs-flat 0/1 incidence matrices and their text formats.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{is_prime, FieldSpec, Gf};
use crate::geometry::{vector_key, ProjectivePoint, Subspace, SymplecticSpace};

pub const MAGIC: &str = "polar-rank-incidence v1";

/// Sparse 0/1 matrix over GF(p): rows are flats, columns are points.
///
/// Labels are descriptive only. Equality compares shape, modulus and
/// entries, so a matrix read back from a file (which carries no labels)
/// equals the matrix that was written.
#[derive(Clone, Debug)]
pub struct SparseIncidenceMatrix {
    cols: usize,
    modulus: u32,
    row_data: Vec<Vec<u32>>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl PartialEq for SparseIncidenceMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.cols == other.cols && self.modulus == other.modulus && self.row_data == other.row_data
    }
}

impl Eq for SparseIncidenceMatrix {}

impl SparseIncidenceMatrix {
    /// Builds a matrix from sorted column-index rows, validating every
    /// invariant.
    pub fn new(cols: usize, modulus: u32, row_data: Vec<Vec<u32>>) -> Result<Self> {
        if !is_prime(modulus as u64) {
            return Err(Error::CompositeP(modulus as u64));
        }
        for (i, row) in row_data.iter().enumerate() {
            if row.windows(2).any(|w| w[0] >= w[1]) || row.last().is_some_and(|&c| c as usize >= cols) {
                return Err(Error::Format {
                    line: i + 3,
                    message: format!("row {i} is not strictly increasing within [0, {cols})"),
                });
            }
        }
        Ok(SparseIncidenceMatrix {
            cols,
            modulus,
            row_data,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        })
    }

    pub fn with_labels(mut self, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        debug_assert!(row_labels.is_empty() || row_labels.len() == self.rows());
        debug_assert!(col_labels.is_empty() || col_labels.len() == self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.row_data.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.row_data[i]
    }

    pub fn row_data(&self) -> &[Vec<u32>] {
        &self.row_data
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(Vec::len).sum()
    }

    pub fn cells(&self) -> u128 {
        self.rows() as u128 * self.cols as u128
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.row_data.iter().map(Vec::len).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let mut sums = vec![0; self.cols];
        for row in &self.row_data {
            for &c in row {
                sums[c as usize] += 1;
            }
        }
        sums
    }

    pub fn transpose(&self) -> SparseIncidenceMatrix {
        let mut t = vec![Vec::new(); self.cols];
        for (i, row) in self.row_data.iter().enumerate() {
            for &c in row {
                t[c as usize].push(i as u32);
            }
        }
        SparseIncidenceMatrix {
            cols: self.rows(),
            modulus: self.modulus,
            row_data: t,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Dense 0/1 rows, for small matrices and tests.
    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        self.row_data
            .iter()
            .map(|row| {
                let mut d = vec![0u8; self.cols];
                for &c in row {
                    d[c as usize] = 1;
                }
                d
            })
            .collect()
    }

    pub fn write_to(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "{MAGIC}")?;
        writeln!(out, "{} {} {}", self.rows(), self.cols, self.modulus)?;
        let mut line = String::new();
        for row in &self.row_data {
            line.clear();
            write!(line, "{}", row.len()).expect("writing to a String");
            for c in row {
                write!(line, " {c}").expect("writing to a String");
            }
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    pub fn read_from(input: impl Read) -> Result<Self> {
        let mut lines = BufReader::new(input).lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut next = |what: &str| -> Result<(usize, String)> {
            match lines.next() {
                Some((n, Ok(l))) => Ok((n, l)),
                Some((_, Err(e))) => Err(e.into()),
                None => Err(Error::Format {
                    line: 0,
                    message: format!("unexpected end of file, expected {what}"),
                }),
            }
        };
        let (n, magic) = next("header")?;
        if magic.trim_end() != MAGIC {
            return Err(format_err(n, format!("expected `{MAGIC}`")));
        }
        let (n, dims) = next("dimensions")?;
        let dims = parse_numbers(n, &dims)?;
        let [rows, cols, modulus] = dims[..] else {
            return Err(format_err(n, "expected `<rows> <cols> <modulus>`".into()));
        };
        let modulus = u32::try_from(modulus).map_err(|_| format_err(n, "modulus too large".into()))?;
        if !is_prime(modulus as u64) {
            return Err(format_err(n, format!("modulus {modulus} is not prime")));
        }
        let mut row_data = Vec::with_capacity(rows as usize);
        for i in 0..rows {
            let (n, line) = next("matrix row").map_err(|_| format_err(i as usize + 3, format!("header declares {rows} rows, found {i}")))?;
            let nums = parse_numbers(n, &line)?;
            let Some((&k, entries)) = nums.split_first() else {
                return Err(format_err(n, "empty row line".into()));
            };
            if k as usize != entries.len() {
                return Err(format_err(n, format!("row declares {k} entries, found {}", entries.len())));
            }
            if entries.windows(2).any(|w| w[0] >= w[1]) {
                return Err(format_err(n, "column indices not strictly increasing".into()));
            }
            if entries.last().is_some_and(|&c| c >= cols) {
                return Err(format_err(n, format!("column index out of range [0, {cols})")));
            }
            row_data.push(entries.iter().map(|&c| c as u32).collect());
        }
        for (n, extra) in lines {
            if !extra?.trim().is_empty() {
                return Err(format_err(n, format!("header declares {rows} rows, found more")));
            }
        }
        Ok(SparseIncidenceMatrix {
            cols: cols as usize,
            modulus,
            row_data,
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        })
    }

    /// Matrix Market `coordinate integer general`, 1-based.
    pub fn write_matrix_market(&self, out: &mut impl Write) -> Result<()> {
        writeln!(out, "%%MatrixMarket matrix coordinate integer general")?;
        writeln!(out, "% entries are residues modulo {}", self.modulus)?;
        writeln!(out, "{} {} {}", self.rows(), self.cols, self.nnz())?;
        for (i, row) in self.row_data.iter().enumerate() {
            for &c in row {
                writeln!(out, "{} {} 1", i + 1, c + 1)?;
            }
        }
        Ok(())
    }
}

fn format_err(line: usize, message: String) -> Error {
    Error::Format { line, message }
}

fn parse_numbers(line: usize, text: &str) -> Result<Vec<u64>> {
    text.split_ascii_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| format_err(line, format!("`{tok}` is not a nonnegative integer"))))
        .collect()
}

pub fn write_matrix(m: &SparseIncidenceMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    m.write_to(&mut out)?;
    out.flush()?;
    Ok(())
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<SparseIncidenceMatrix> {
    SparseIncidenceMatrix::read_from(File::open(path)?)
}

pub fn write_matrix_market(m: &SparseIncidenceMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    m.write_matrix_market(&mut out)?;
    out.flush()?;
    Ok(())
}

/// Incidence of `flats` against the sorted point list `points`: entry
/// (Y, Z) is 1 iff point Z lies in flat Y. Every point of every flat must
/// occur in `points`.
pub fn incidence_matrix(field: &FieldSpec, points: &[ProjectivePoint], flats: &[Subspace]) -> SparseIncidenceMatrix {
    let keys: Vec<u64> = points.iter().map(|pt| vector_key(field, pt.coords())).collect();
    debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    let row_data = flats
        .iter()
        .map(|flat| {
            let mut cols: Vec<u32> = flat
                .points(field)
                .iter()
                .map(|pt| {
                    let key = vector_key(field, pt.coords());
                    keys.binary_search(&key).expect("flat point missing from the point list") as u32
                })
                .collect();
            cols.sort_unstable();
            cols
        })
        .collect();
    SparseIncidenceMatrix {
        cols: points.len(),
        modulus: field.p(),
        row_data,
        row_labels: flats.iter().map(subspace_label).collect(),
        col_labels: points.iter().map(|pt| vector_label(pt.coords())).collect(),
    }
}

/// The matrix with rows indexed by the r-flats of the polar space (totally
/// isotropic for r <= m, perps of isotropic subspaces above) and columns by
/// all points of PG(2m-1, q).
pub fn build_incidence(space: &SymplecticSpace, r: usize) -> Result<SparseIncidenceMatrix> {
    let flats = space.flats(r)?;
    let points = space.points();
    Ok(incidence_matrix(space.field(), &points, &flats))
}

pub fn vector_label(v: &[Gf]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.0.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn subspace_label(s: &Subspace) -> String {
    let rows: Vec<String> = s.rows().iter().map(|r| vector_label(r)).collect();
    format!("<{}>", rows.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(m: usize, p: u32, t: u32) -> SymplecticSpace {
        SymplecticSpace::new(m, FieldSpec::new(p, t).unwrap()).unwrap()
    }

    #[test]
    fn gq33_lines() {
        let s = space(2, 3, 1);
        let a = build_incidence(&s, 2).unwrap();
        assert_eq!((a.rows(), a.cols(), a.modulus()), (40, 40, 3));
        assert!(a.row_sums().iter().all(|&k| k == 4));
        assert!(a.col_sums().iter().all(|&k| k == 4));
        assert_eq!(a.nnz(), 160);
        assert_eq!(a.row_labels().len(), 40);
    }

    #[test]
    fn points_against_points_is_identity() {
        let a = build_incidence(&space(2, 3, 1), 1).unwrap();
        for i in 0..a.rows() {
            assert_eq!(a.row(i), &[i as u32]);
        }
    }

    #[test]
    fn hyperplanes_and_w5_lines() {
        let a = build_incidence(&space(2, 3, 1), 3).unwrap();
        assert_eq!((a.rows(), a.cols()), (40, 40));
        assert!(a.row_sums().iter().all(|&k| k == 13));
        assert!(a.col_sums().iter().all(|&k| k == 13));

        let b = build_incidence(&space(3, 3, 1), 2).unwrap();
        assert_eq!((b.rows(), b.cols()), (3640, 364));
        assert!(b.row_sums().iter().all(|&k| k == 4));
        let cs = b.col_sums();
        assert!(cs.iter().all(|&k| k == cs[0]));
        assert_eq!(b.rows() * 4, b.cols() * cs[0]);
    }

    #[test]
    fn round_trip_and_header() {
        let a = build_incidence(&space(2, 3, 1), 2).unwrap();
        let mut buf = Vec::new();
        a.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(MAGIC));
        assert_eq!(lines.next(), Some("40 40 3"));
        let b = SparseIncidenceMatrix::read_from(&buf[..]).unwrap();
        assert_eq!(a, b);
        let dir = std::env::temp_dir().join(format!("polar-rank-io-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("w33.txt");
        write_matrix(&a, &path).unwrap();
        assert_eq!(read_matrix(&path).unwrap(), a);
        assert_eq!(std::fs::read(&path).unwrap(), buf);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn malformed_files_rejected_with_line_numbers() {
        let line_of = |text: &str| match SparseIncidenceMatrix::read_from(text.as_bytes()) {
            Err(Error::Format { line, .. }) => line,
            other => panic!("expected a format error, got {other:?}"),
        };
        assert_eq!(line_of("bogus\n1 1 3\n1 0\n"), 1);
        assert_eq!(line_of(&format!("{MAGIC}\n1 1\n1 0\n")), 2);
        assert_eq!(line_of(&format!("{MAGIC}\n1 1 4\n1 0\n")), 2);
        assert_eq!(line_of(&format!("{MAGIC}\n2 3 3\n1 0\n")), 4);
        assert_eq!(line_of(&format!("{MAGIC}\n1 3 3\n1 0\n0\n")), 4);
        assert_eq!(line_of(&format!("{MAGIC}\n1 3 3\n2 0\n")), 3);
        assert_eq!(line_of(&format!("{MAGIC}\n1 3 3\n2 1 1\n")), 3);
        assert_eq!(line_of(&format!("{MAGIC}\n1 3 3\n1 3\n")), 3);
        assert_eq!(line_of(&format!("{MAGIC}\n1 3 3\n1 x\n")), 3);
        let ok = SparseIncidenceMatrix::read_from(format!("{MAGIC}\n2 3 3\n0\n2 0 2\n").as_bytes()).unwrap();
        assert_eq!(ok.row_data(), &[vec![], vec![0, 2]]);
    }

    #[test]
    fn matrix_market_export() {
        let a = SparseIncidenceMatrix::new(3, 3, vec![vec![0, 2], vec![1]]).unwrap();
        let mut buf = Vec::new();
        a.write_matrix_market(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('%')).collect();
        assert_eq!(body, ["2 3 3", "1 1 1", "1 3 1", "2 2 1"]);
        assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n"));
    }

    #[test]
    fn transpose_swaps_sums() {
        let a = build_incidence(&space(3, 3, 1), 3).unwrap();
        let t = a.transpose();
        assert_eq!(t.row_sums(), a.col_sums());
        assert_eq!(t.col_sums(), a.row_sums());
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn constructor_validates() {
        assert!(SparseIncidenceMatrix::new(3, 4, vec![]).is_err());
        assert!(SparseIncidenceMatrix::new(3, 3, vec![vec![2, 1]]).is_err());
        assert!(SparseIncidenceMatrix::new(3, 3, vec![vec![3]]).is_err());
    }
}
