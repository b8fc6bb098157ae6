//! Line-oriented fan files.
//!
//! ```text
//! # the projective plane
//! dim 2
//! rays 3
//! 1 0
//! 0 1
//! -1 -1
//! cones 3
//! 1 2
//! 2 3
//! 1 3
//! ```
//!
//! Ray indices in the cone list are 1-based. Lines starting with `#` and
//! blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::fan::Fan;

struct Lines<'a> {
    path: &'a str,
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        Self {
            path,
            inner: Box::new(
                text.lines()
                    .enumerate()
                    .map(|(i, l)| (i + 1, l.trim()))
                    .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
            ),
            last: 0,
        }
    }

    fn error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            path: self.path.to_string(),
            line,
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(self.error(self.last + 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn header(&mut self, keyword: &str) -> Result<usize> {
        let (n, l) = self.next(&format!("`{keyword} <count>`"))?;
        let mut parts = l.split_whitespace();
        if parts.next() != Some(keyword) {
            return Err(self.error(n, format!("expected `{keyword} <count>`, found `{l}`")));
        }
        let count = parts
            .next()
            .and_then(|c| c.parse::<usize>().ok())
            .ok_or_else(|| self.error(n, format!("`{keyword}` needs a non-negative integer")))?;
        if parts.next().is_some() {
            return Err(self.error(n, format!("trailing tokens after `{keyword} {count}`")));
        }
        Ok(count)
    }
}

/// Parses without validating the fan.
pub fn parse_fan_str_unchecked(text: &str, path: &str) -> Result<Fan> {
    let mut lines = Lines::new(path, text);
    let dim = lines.header("dim")?;
    let num_rays = lines.header("rays")?;
    let mut rays = Vec::with_capacity(num_rays);
    for _ in 0..num_rays {
        let (n, l) = lines.next("a ray")?;
        let ray = l
            .split_whitespace()
            .map(|t| t.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| lines.error(n, format!("ray coordinates must be integers: `{l}`")))?;
        if ray.len() != dim {
            return Err(lines.error(n, format!("ray has {} coordinates, expected {dim}", ray.len())));
        }
        rays.push(ray);
    }
    let num_cones = lines.header("cones")?;
    let mut cones = Vec::with_capacity(num_cones);
    for _ in 0..num_cones {
        let (n, l) = lines.next("a cone")?;
        let cone = l
            .split_whitespace()
            .map(|t| t.parse::<usize>().ok().filter(|&i| (1..=num_rays).contains(&i)).map(|i| i - 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| lines.error(n, format!("cone entries must be ray indices 1..={num_rays}: `{l}`")))?;
        cones.push(cone);
    }
    if let Some((n, l)) = lines.inner.next() {
        return Err(lines.error(n, format!("unexpected content after the cone list: `{l}`")));
    }
    Fan::from_parts(dim, rays, cones).map_err(|e| Error::FanFile {
        path: path.to_string(),
        source: Box::new(e),
    })
}

/// Parses and validates.
pub fn parse_fan_str(text: &str, path: &str) -> Result<Fan> {
    let fan = parse_fan_str_unchecked(text, path)?;
    Fan::new(fan.dim(), fan.rays().to_vec(), fan.max_cones().to_vec()).map_err(|e| Error::FanFile {
        path: path.to_string(),
        source: Box::new(e),
    })
}

pub fn parse_fan_file(path: &Path) -> Result<Fan> {
    let text = std::fs::read_to_string(path)?;
    parse_fan_str(&text, &path.display().to_string())
}

pub fn write_fan(f: &Fan) -> String {
    let mut out = String::new();
    writeln!(out, "dim {}", f.dim()).unwrap();
    writeln!(out, "rays {}", f.num_rays()).unwrap();
    for r in f.rays() {
        let parts: Vec<String> = r.iter().map(BigInt::to_string).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    writeln!(out, "cones {}", f.max_cones().len()).unwrap();
    for c in f.max_cones() {
        let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
        writeln!(out, "{}", parts.join(" ")).unwrap();
    }
    out
}

pub fn write_fan_file(f: &Fan, path: &Path) -> Result<()> {
    std::fs::write(path, write_fan(f))?;
    Ok(())
}
