//! Plain-text artifact formats.
//!
//! * group: first line `n`, then `n` rows of `n` whitespace-separated
//!   indices, optionally followed by `labels: x0 x1 ...`. Built-in names
//!   `cyclicN`, `zN`, `dihedralM` and `dM` may stand in for a file.
//! * cocycle: `n` lines of `n` characters from `{0,1}`, row `σ` holding `f(σ, ·)`.
//! * r: one value per line, either an integer or a tuple `(a,b,...)`.
//! * chain: one ideal per line as `{i,j,...}`, `{}` for the zero ideal.
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::path::Path;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, DescendingChain, MonomialIdeal};
use crate::cocycle::{BinaryTable, Cocycle, CocycleError};
use crate::group::{Group, GroupError};
use crate::semilinear::{AdditiveNaturals, LexProduct, SemilinearError, SemilinearMap};
use crate::set::ElemSet;

/// Malformed text, reported with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{source_name}:{line}: {message}")]
pub struct ParseError {
    pub source_name: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
    #[error("the supplied cocycle differs from f_r at ({0},{1})")]
    Inconsistent(usize, usize),
}

impl IoError {
    /// `2` for unreadable or malformed input, `1` for input that parses
    /// but fails validation.
    pub fn exit_code(&self) -> u8 {
        match self {
            IoError::Parse(_) | IoError::Read { .. } => 2,
            _ => 1,
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn err(source_name: &str, line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        source_name: source_name.to_string(),
        line,
        message: message.into(),
    }
}

pub fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Resolves a built-in group name, if `name` is one.
pub fn builtin_group(name: &str) -> Option<Result<Group, GroupError>> {
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(split);
    let k: usize = digits.parse().ok()?;
    match prefix {
        "cyclic" | "z" | "Z" => Some(Group::cyclic(k)),
        "dihedral" | "d" | "D" => Some(Group::dihedral(k)),
        _ => None,
    }
}

pub fn parse_group(text: &str, source_name: &str) -> Result<Group, IoError> {
    let mut lines = content_lines(text);
    let (first, head) = lines
        .next()
        .ok_or_else(|| err(source_name, 1, "empty group file"))?;
    let n: usize = head.parse().map_err(|_| {
        err(
            source_name,
            first,
            format!("expected the group order, found {head:?}"),
        )
    })?;
    let mut rows = Vec::with_capacity(n);
    let mut labels = None;
    for (line, content) in lines {
        if let Some(rest) = content.strip_prefix("labels:") {
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.len() != n {
                return Err(err(
                    source_name,
                    line,
                    format!("expected {n} labels, found {}", names.len()),
                )
                .into());
            }
            labels = Some(names);
            continue;
        }
        if labels.is_some() {
            return Err(err(source_name, line, "table rows after the labels line").into());
        }
        let row: Vec<usize> = content
            .split_whitespace()
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| err(source_name, line, format!("not an index: {x:?}")))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(err(
                source_name,
                line,
                format!("expected {n} entries, found {}", row.len()),
            )
            .into());
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(err(source_name, line, format!("index {bad} out of range")).into());
        }
        rows.push(row);
        if rows.len() > n {
            return Err(err(source_name, line, format!("more than {n} rows")).into());
        }
    }
    if rows.len() != n {
        return Err(err(
            source_name,
            text.lines().count().max(1),
            format!("expected {n} rows, found {}", rows.len()),
        )
        .into());
    }
    let group = Group::from_table(&rows)?;
    Ok(match labels {
        Some(l) => group.with_labels(l),
        None => group,
    })
}

/// A built-in name or the path of a group file.
pub fn load_group(name: &str) -> Result<Group, IoError> {
    if let Some(g) = builtin_group(name) {
        if !Path::new(name).exists() {
            return Ok(g?);
        }
    }
    parse_group(&read_file(Path::new(name))?, name)
}

pub fn emit_group(group: &Group) -> String {
    let n = group.order();
    let mut out = format!("{n}\n");
    for row in group.rows() {
        let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    if group
        .labels()
        .iter()
        .enumerate()
        .any(|(i, l)| *l != i.to_string())
    {
        out.push_str("labels: ");
        out.push_str(&group.labels().join(" "));
        out.push('\n');
    }
    out
}

/// Parses the 0/1 block without checking the cocycle identity.
pub fn parse_table(
    group: &Arc<Group>,
    text: &str,
    source_name: &str,
) -> Result<BinaryTable, IoError> {
    let n = group.order();
    let mut rows = Vec::with_capacity(n);
    let mut last = 1;
    for (line, content) in content_lines(text) {
        last = line;
        if rows.len() == n {
            return Err(err(source_name, line, format!("more than {n} rows")).into());
        }
        let row: Vec<bool> = content
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(err(
                    source_name,
                    line,
                    format!("unexpected character {other:?}"),
                )),
            })
            .collect::<Result<_, _>>()?;
        if row.len() != n {
            return Err(err(
                source_name,
                line,
                format!("expected {n} entries, found {}", row.len()),
            )
            .into());
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(err(
            source_name,
            last,
            format!("expected {n} rows, found {}", rows.len()),
        )
        .into());
    }
    Ok(BinaryTable::from_rows(group.clone(), &rows)?)
}

pub fn parse_cocycle(
    group: &Arc<Group>,
    text: &str,
    source_name: &str,
) -> Result<Cocycle, IoError> {
    Ok(Cocycle::validate(parse_table(group, text, source_name)?)?)
}

pub fn emit_table(table: &BinaryTable) -> String {
    let mut out = String::new();
    for row in table.rows() {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

/// An r file holds either plain naturals or lexicographic tuples.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMap {
    Naturals(SemilinearMap<AdditiveNaturals>),
    Lex(SemilinearMap<LexProduct<AdditiveNaturals>>),
}

impl AnyMap {
    pub fn cocycle_table(&self) -> BinaryTable {
        match self {
            AnyMap::Naturals(r) => r.cocycle_table(),
            AnyMap::Lex(r) => r.cocycle_table(),
        }
    }

    pub fn cocycle(&self) -> Cocycle {
        match self {
            AnyMap::Naturals(r) => r.cocycle(),
            AnyMap::Lex(r) => r.cocycle(),
        }
    }

    pub fn render(&self) -> String {
        match self {
            AnyMap::Naturals(r) => r.render(),
            AnyMap::Lex(r) => r.render(),
        }
    }
}

fn parse_natural(s: &str, source_name: &str, line: usize) -> Result<u64, ParseError> {
    s.trim().parse().map_err(|_| {
        err(
            source_name,
            line,
            format!("not a natural number: {:?}", s.trim()),
        )
    })
}

pub fn parse_r(group: &Arc<Group>, text: &str, source_name: &str) -> Result<AnyMap, IoError> {
    let n = group.order();
    let mut plain = Vec::new();
    let mut tuples: Vec<Vec<u64>> = Vec::new();
    let mut last = 1;
    for (line, content) in content_lines(text) {
        last = line;
        if plain.len() + tuples.len() == n {
            return Err(err(source_name, line, format!("more than {n} values")).into());
        }
        if let Some(inner) = content.strip_prefix('(').and_then(|c| c.strip_suffix(')')) {
            if !plain.is_empty() {
                return Err(err(source_name, line, "tuple after plain values").into());
            }
            let tuple: Vec<u64> = inner
                .split(',')
                .map(|x| parse_natural(x, source_name, line))
                .collect::<Result<_, _>>()?;
            if let Some(first) = tuples.first() {
                if first.len() != tuple.len() {
                    return Err(err(
                        source_name,
                        line,
                        format!("expected {} components", first.len()),
                    )
                    .into());
                }
            }
            tuples.push(tuple);
        } else {
            if !tuples.is_empty() {
                return Err(err(source_name, line, "plain value after tuples").into());
            }
            plain.push(parse_natural(content, source_name, line)?);
        }
    }
    if plain.len() + tuples.len() != n {
        return Err(err(
            source_name,
            last,
            format!("expected {n} values, found {}", plain.len() + tuples.len()),
        )
        .into());
    }
    Ok(if tuples.is_empty() {
        AnyMap::Naturals(SemilinearMap::new(group.clone(), AdditiveNaturals, plain)?)
    } else {
        let monoid = LexProduct::power(AdditiveNaturals, tuples[0].len());
        AnyMap::Lex(SemilinearMap::new(group.clone(), monoid, tuples)?)
    })
}

/// Parses `{i,j,...}` or a bare `i,j,...` into a set of indices.
pub fn parse_index_set(
    content: &str,
    universe: usize,
    source_name: &str,
    line: usize,
) -> Result<ElemSet, ParseError> {
    let inner = content.trim();
    let inner = inner
        .strip_prefix('{')
        .and_then(|c| c.strip_suffix('}'))
        .unwrap_or(inner);
    let mut set = ElemSet::empty(universe);
    for part in inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
    {
        let x: usize = part
            .parse()
            .map_err(|_| err(source_name, line, format!("not an index: {part:?}")))?;
        if x >= universe {
            return Err(err(source_name, line, format!("index {x} out of range")));
        }
        set.insert(x);
    }
    Ok(set)
}

/// One ideal per line; each must be closed.
pub fn parse_ideals(
    ctx: &AlgebraContext,
    text: &str,
    source_name: &str,
) -> Result<Vec<MonomialIdeal>, IoError> {
    let mut ideals = Vec::new();
    for (line, content) in content_lines(text) {
        let set = parse_index_set(content, ctx.order(), source_name, line)?;
        ideals.push(ctx.ideal(set)?);
    }
    Ok(ideals)
}

pub fn parse_chain(
    ctx: &AlgebraContext,
    text: &str,
    source_name: &str,
) -> Result<DescendingChain, IoError> {
    Ok(ctx.chain(parse_ideals(ctx, text, source_name)?)?)
}

pub fn emit_chain(chain: &DescendingChain) -> String {
    chain.ideals().iter().map(|i| format!("{i}\n")).collect()
}

/// Fully loaded inputs of one command.
#[derive(Debug, Clone)]
pub struct Artifacts {
    pub group: Arc<Group>,
    pub cocycle: Option<Cocycle>,
    pub r: Option<AnyMap>,
}

/// Loads the group, then the cocycle and r files if given. With only r the
/// cocycle is `f_r`; with both they must agree.
pub fn load_artifacts(
    group: &str,
    cocycle: Option<&Path>,
    r: Option<&Path>,
) -> Result<Artifacts, IoError> {
    let group = Arc::new(load_group(group)?);
    let r = match r {
        Some(p) => Some(parse_r(&group, &read_file(p)?, &p.display().to_string())?),
        None => None,
    };
    let cocycle = match cocycle {
        Some(p) => {
            let table = parse_table(&group, &read_file(p)?, &p.display().to_string())?;
            if let Some(r) = &r {
                if let Some((s, t)) = table.first_difference(&r.cocycle_table()) {
                    return Err(IoError::Inconsistent(s, t));
                }
            }
            Some(Cocycle::validate(table)?)
        }
        None => r.as_ref().map(AnyMap::cocycle),
    };
    Ok(Artifacts { group, cocycle, r })
}
