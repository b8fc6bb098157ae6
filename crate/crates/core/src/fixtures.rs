//! Named example fans.
//!
//! The four rank-2 fourfolds and `P^4` are rebuilt from their grading matrix
//! and irrelevant ideal; `fanoN` uses the index `N` of the smooth toric Fano
//! fourfold database.

use crate::coxring::{fan_from_bunch, nonnef_example, GradingData};
use crate::error::{Error, Result};
use crate::fan::standard::{p1_x_p1, projective_space};
use crate::fan::Fan;
use crate::ideal::intersect_primes;
use crate::linalg::IntegerMatrix;
use crate::models::{blowup_grading, z1_grading, BlowupModel};

/// The fourfolds whose irrelevant ideal has codimension at least 3.
pub const FANO_FOURFOLDS: [&str; 5] = ["fano44", "fano70", "fano141", "fano146", "fano147"];

const RANK_TWO_BOTTOM_ROWS: [(&str, [i64; 6]); 4] = [
    ("fano44", [1, 1, 2, 0, 1, 2]),
    ("fano70", [1, 1, 0, 0, 1, 1]),
    ("fano141", [1, 1, 1, 0, 1, 1]),
    ("fano146", [1, 1, 0, 0, 1, 0]),
];

const MODEL_RANGE: std::ops::RangeInclusive<usize> = 3..=5;

/// Grading data as tabulated for the five fourfolds.
pub fn table_grading(name: &str) -> Result<GradingData> {
    if name == "fano147" {
        let j = intersect_primes(&[(0..5).collect()], 5)?;
        return GradingData::new(IntegerMatrix::from_i64(&[&[1, 1, 1, 1, 1]]), j);
    }
    let (_, bottom) = RANK_TWO_BOTTOM_ROWS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
    let q = IntegerMatrix::from_i64(&[&[0, 0, 1, 1, 0, 1], bottom]);
    let j = intersect_primes(&[vec![0, 1, 4], vec![2, 3, 5]], 6)?;
    GradingData::new(q, j)
}

pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = FANO_FOURFOLDS.iter().map(|s| s.to_string()).collect();
    names.extend(["p2", "p4", "p1xp1", "nonnef"].map(String::from));
    for n in MODEL_RANGE {
        names.push(format!("blowup-n{n}"));
    }
    for n in MODEL_RANGE {
        for d in MODEL_RANGE {
            names.push(format!("z1-n{n}-d{d}"));
        }
    }
    names
}

fn parse_model(name: &str) -> Option<(usize, Option<usize>)> {
    if let Some(n) = name.strip_prefix("blowup-n") {
        return n.parse().ok().filter(|n| MODEL_RANGE.contains(n)).map(|n| (n, None));
    }
    let rest = name.strip_prefix("z1-n")?;
    let (n, d) = rest.split_once("-d")?;
    let (n, d) = (n.parse().ok()?, d.parse().ok()?);
    (MODEL_RANGE.contains(&n) && MODEL_RANGE.contains(&d)).then_some((n, Some(d)))
}

pub fn fixture(name: &str) -> Result<Fan> {
    match name {
        "p2" => return Ok(projective_space(2)),
        "p4" => return Ok(projective_space(4)),
        "p1xp1" => return Ok(p1_x_p1()),
        "nonnef" => return fan_from_bunch(&nonnef_example()),
        _ => {}
    }
    if FANO_FOURFOLDS.contains(&name) {
        return fan_from_bunch(&table_grading(name)?);
    }
    match parse_model(name) {
        Some((n, None)) => fan_from_bunch(&blowup_grading(&BlowupModel::new(n, 3)?)),
        Some((n, Some(d))) => fan_from_bunch(&z1_grading(&BlowupModel::new(n, d)?)),
        None => Err(Error::UnknownFixture(name.to_string())),
    }
}
