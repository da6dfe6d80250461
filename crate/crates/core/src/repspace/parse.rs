//! Reader for the line-oriented representation file format.
//!
//! ```text
//! field cyclotomic 12
//! dim 2
//! gen x
//! row z^3 0
//! row 1 -z^3
//! gen y
//! row z^2 -z^2+z^-2
//! row 0 z^-2
//! ```
//!
//! Row entries are separated by whitespace, or by commas when the row
//! contains a comma (needed for entries with inner spaces). `gl true` allows
//! images with determinant other than 1. `label <text>` is optional.

use std::sync::Arc;

use crate::cyclofield::CycField;
use crate::error::{Error, Result};
use crate::fpgroup::Presentation;
use crate::laurentlin::Mat;
use crate::repspace::Representation;

/// Parses a representation of `pres`. `default_field` is used when the file
/// has no `field` line.
pub fn parse_representation(
    text: &str,
    pres: Arc<Presentation>,
    default_field: Option<&CycField>,
) -> Result<Representation> {
    let mut field = default_field.cloned();
    let mut dim: Option<usize> = None;
    let mut special = true;
    let mut label = String::from("file");
    let mut rows: Vec<Vec<Vec<String>>> = vec![Vec::new(); pres.num_gens()];
    let mut row_lines: Vec<Vec<usize>> = vec![Vec::new(); pres.num_gens()];
    let mut current: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(char::is_whitespace)
            .unwrap_or((content, ""));
        let rest = rest.trim();
        match key {
            "field" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let n = match parts.as_slice() {
                    ["cyclotomic", n] => n
                        .parse::<u32>()
                        .map_err(|_| Error::parse(line, "bad conductor"))?,
                    _ => return Err(Error::parse(line, "expected 'field cyclotomic <N>'")),
                };
                field = Some(CycField::new(n).map_err(|e| Error::parse(line, e.to_string()))?);
            }
            "dim" => {
                dim = Some(
                    rest.parse()
                        .map_err(|_| Error::parse(line, "bad dimension"))?,
                )
            }
            "gl" => {
                special = match rest {
                    "true" => false,
                    "false" => true,
                    _ => return Err(Error::parse(line, "expected 'gl true' or 'gl false'")),
                }
            }
            "label" => label = rest.to_string(),
            "gen" => {
                let j = pres
                    .gen_index(rest)
                    .ok_or_else(|| Error::parse(line, format!("unknown generator '{rest}'")))?;
                if !rows[j].is_empty() {
                    return Err(Error::parse(
                        line,
                        format!("generator '{rest}' given twice"),
                    ));
                }
                current = Some(j);
            }
            "row" => {
                let j = current.ok_or_else(|| Error::parse(line, "row before any gen line"))?;
                let entries: Vec<String> = if rest.contains(',') {
                    rest.split(',').map(|s| s.trim().to_string()).collect()
                } else {
                    rest.split_whitespace().map(str::to_string).collect()
                };
                rows[j].push(entries);
                row_lines[j].push(line);
            }
            other => return Err(Error::parse(line, format!("unknown keyword '{other}'"))),
        }
    }
    let field = field.ok_or_else(|| Error::parse(0, "no field given"))?;
    let n = dim.ok_or_else(|| Error::parse(0, "missing dim line"))?;
    let mut images = Vec::with_capacity(pres.num_gens());
    for (j, gen_rows) in rows.iter().enumerate() {
        if gen_rows.len() != n {
            return Err(Error::parse(
                0,
                format!(
                    "generator '{}' has {} rows, expected {n}",
                    pres.gens[j],
                    gen_rows.len()
                ),
            ));
        }
        let mut parsed = Vec::with_capacity(n);
        for (r, entries) in gen_rows.iter().enumerate() {
            let line = row_lines[j][r];
            if entries.len() != n {
                return Err(Error::parse(
                    line,
                    format!("row has {} entries, expected {n}", entries.len()),
                ));
            }
            let elts = entries
                .iter()
                .map(|e| field.parse_at_line(e, line))
                .collect::<Result<Vec<_>>>()?;
            parsed.push(elts);
        }
        images.push(Mat::from_rows(&field, parsed)?);
    }
    Representation::new(pres, images, &label, special)
}
