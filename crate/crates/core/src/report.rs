//! Text reports behind the command-line tool.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::coxring::{grading_from_fan, lefschetz_codim_check, DivisorClass};
use crate::error::{Error, Result};
use crate::fan::{anticanonical_degree, dual_variety, irrelevant_ideal, is_complete, is_fano, is_smooth, Fan};
use crate::fanfile::parse_fan_file;
use crate::hilbert::{ci_dimension, quotient_dim_oracle, CompleteIntersectionSpec};
use crate::linalg::{integer_kernel, IntegerMatrix};
use crate::models::{blowup_grading, cox3_spec, cox4_spec, z1_grading, BlowupModel};

/// Rows of cells, rendered either aligned or tab-separated.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn push(&mut self, row: impl IntoIterator<Item = impl Into<String>>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    fn push_pair(&mut self, key: &str, value: impl ToString) {
        self.push([key.to_string(), value.to_string()]);
    }

    /// Value of the first row whose first cell is `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.rows
            .iter()
            .find(|r| r.first().is_some_and(|k| k == key))
            .and_then(|r| r.get(1))
            .map(String::as_str)
    }

    pub fn render(&self, tsv: bool) -> String {
        let mut out = String::new();
        if tsv {
            for r in &self.rows {
                out.push_str(&r.join("\t"));
                out.push('\n');
            }
            return out;
        }
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for r in &self.rows {
            let mut line = String::new();
            for (c, cell) in r.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                if c + 1 < r.len() {
                    line.push_str(&" ".repeat(widths[c] - cell.chars().count()));
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// `[[a,b,c],[d,e,f]]`.
pub fn format_matrix(m: &IntegerMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

/// Invariants of a fan and of its Cox ring.
pub fn cmd_analyze(f: &Fan) -> Result<Table> {
    let mut t = Table::default();
    t.push_pair("dim", f.dim());
    t.push_pair("rays", f.num_rays());
    t.push_pair("cones", f.max_cones().len());
    let g = grading_from_fan(f)?;
    t.push_pair("grading", format_matrix(&g.hnf()));
    t.push_pair("irrelevant", g.irrelevant().display_primes(1));
    let check = lefschetz_codim_check(&g)?;
    t.push_pair("lefschetz_codim", check.codim);
    t.push_pair("lefschetz", if check.passes { "pass" } else { "fail" });
    t.push_pair("smooth", yes_no(is_smooth(f)));
    let complete = match is_complete(f) {
        Ok(c) => yes_no(c),
        Err(Error::FanPrecondition(_)) => "n/a",
        Err(e) => return Err(e),
    };
    t.push_pair("complete", complete);
    let fano = is_fano(f)?;
    t.push_pair("fano", yes_no(fano));
    let degree = if fano {
        anticanonical_degree(f)?.to_string()
    } else {
        "n/a".to_string()
    };
    t.push_pair("degree", degree);
    t.push_pair("kernel", format_matrix(&integer_kernel(&f.ray_matrix())));
    Ok(t)
}

/// The face fan of the anticanonical polytope and its irrelevant codimension.
pub fn cmd_dual(f: &Fan) -> Result<Table> {
    let dual = dual_variety(f)?;
    let codim = irrelevant_ideal(&dual).vanishing_codim()?;
    let mut t = Table::default();
    t.push_pair("dual_dim", dual.dim());
    t.push_pair("dual_rays", dual.num_rays());
    t.push_pair("dual_cones", dual.max_cones().len());
    t.push_pair("dual_codim", codim);
    t.push_pair("dual_lefschetz", if codim >= 3 { "pass" } else { "fail" });
    let degree = if is_fano(&dual)? {
        anticanonical_degree(&dual)?.to_string()
    } else {
        "n/a".to_string()
    };
    t.push_pair("dual_degree", degree);
    Ok(t)
}

/// Orders names so that digit runs compare numerically (`a9 < a10`).
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, p), (true, q)) => {
                let (p, q) = (p.trim_start_matches('0'), q.trim_start_matches('0'));
                p.len().cmp(&q.len()).then_with(|| p.cmp(q))
            }
            ((_, p), (_, q)) => p.cmp(q),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len()).then_with(|| a.cmp(b))
}

/// Outcome of scanning a directory of fan files.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanReport {
    /// `(file name, codim)` for every file passing the codimension test.
    pub passing: Vec<(String, usize)>,
    /// `(file name, codim)` for every readable file, passing or not.
    pub all: Vec<(String, usize)>,
    /// `(file name, message)` for files that could not be analysed.
    pub failures: Vec<(String, String)>,
}

impl ScanReport {
    pub fn passing_names(&self) -> Vec<&str> {
        self.passing.iter().map(|(n, _)| n.as_str()).collect()
    }

    pub fn table(&self) -> Table {
        let mut t = Table::default();
        t.push(["file", "codim"]);
        for (name, codim) in &self.passing {
            t.push([name.clone(), codim.to_string()]);
        }
        t
    }
}

fn scan_one(path: &Path) -> Result<usize> {
    let f = parse_fan_file(path)?;
    irrelevant_ideal(&f).vanishing_codim()
}

/// Every regular, non-hidden file in `dir` is read as a fan; results are
/// sorted by file name.
pub fn cmd_scan(dir: &Path) -> Result<ScanReport> {
    let mut paths: Vec<PathBuf> = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let entry = entry?;
        let hidden = entry.file_name().to_string_lossy().starts_with('.');
        if entry.file_type()?.is_file() && !hidden {
            paths.push(entry.path());
        }
    }
    let mut results: Vec<(String, Result<usize>)> = paths
        .par_iter()
        .map(|p| {
            let name = p.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            (name, scan_one(p))
        })
        .collect();
    results.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    let mut report = ScanReport::default();
    for (name, r) in results {
        match r {
            Ok(codim) => {
                if codim >= 3 {
                    report.passing.push((name.clone(), codim));
                }
                report.all.push((name, codim));
            }
            Err(e) => report.failures.push((name, e.to_string())),
        }
    }
    Ok(report)
}

/// Gradings and irrelevant codimensions of the blowup `Z` and of `Z1`.
pub fn cmd_blowup_model(n: usize, d: usize) -> Result<Table> {
    let m = BlowupModel::new(n, d)?;
    let mut t = Table::default();
    t.push_pair("n", n);
    t.push_pair("d", d);
    let z = blowup_grading(&m);
    t.push_pair("blowup_grading", format_matrix(z.degree_matrix()));
    t.push_pair("blowup_irrelevant", z.irrelevant().display_primes(1));
    let zc = lefschetz_codim_check(&z)?;
    t.push_pair("blowup_codim", zc.codim);
    t.push_pair("blowup_lefschetz", if zc.passes { "pass" } else { "fail" });
    let z1 = z1_grading(&m);
    t.push_pair("z1_grading", format_matrix(z1.degree_matrix()));
    t.push_pair("z1_irrelevant", z1.irrelevant().display_primes(0));
    let c = lefschetz_codim_check(&z1)?;
    t.push_pair("z1_codim", c.codim);
    t.push_pair("z1_lefschetz", if c.passes { "pass" } else { "fail" });
    Ok(t)
}

/// Which Cox-ring presentation to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HilbertModel {
    Cox3,
    Cox4,
}

impl HilbertModel {
    pub fn spec(self, n: usize, d: usize, seed: u64) -> Result<CompleteIntersectionSpec> {
        match self {
            HilbertModel::Cox3 => {
                if n != 3 {
                    return Err(Error::InvalidModel(format!("cox3 needs n = 3, got {n}")));
                }
                cox3_spec(d, seed)
            }
            HilbertModel::Cox4 => cox4_spec(&BlowupModel::new(n, d)?, seed),
        }
    }
}

/// Dimension of one graded piece, optionally with the linear-algebra check.
pub fn cmd_hilbert(model: HilbertModel, n: usize, d: usize, degree: (i64, i64), oracle: bool, seed: u64) -> Result<Table> {
    let spec = model.spec(n, d, seed)?;
    let w = DivisorClass::from_i64(&[degree.0, degree.1]);
    let mut t = Table::default();
    t.push_pair("model", if model == HilbertModel::Cox3 { "cox3" } else { "cox4" });
    t.push_pair("n", n);
    t.push_pair("d", d);
    t.push_pair("degree", &w);
    t.push_pair("dimension", ci_dimension(&spec, &w)?);
    if oracle {
        t.push_pair("seed", seed);
        t.push_pair("oracle", quotient_dim_oracle(&spec, &w)?);
    }
    Ok(t)
}
