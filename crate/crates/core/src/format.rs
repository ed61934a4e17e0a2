//! Line-oriented input formats for algebras, cover systems and models.
//!
//! All three formats share the same conventions: `#` starts a comment,
//! tokens are whitespace-separated, and a file holds one or more
//! `[kind NAME]` blocks. Tables are total and relations explicit: parsing
//! performs no inference beyond the documented reflexive-transitive closure
//! of `order =` / `preorder =` generators.
//!
//! `[algebra NAME]`
//!   elements = e1 e2 ...
//!   order = a<=b ...          # generators, closed reflexively/transitively
//!   unit = e
//!   zero = e                  # optional
//!   fusion:                   # all |L|² lines `a*b = c`
//!   bang:                     # optional, lines `!a = b`
//!   quest:                    # optional, lines `?a = b`
//!
//! `[cover NAME]`
//!   points = x y ...
//!   preorder = x<=y ...
//!   epsilon = x               # optional, with fusion:
//!   covers:                   # lines `x <| { y z }`, or the single line
//!                             # `backend = lattice-join order = <name-or-pairs>`
//!   zero = { x y }            # optional
//!   I = { x y }               # optional
//!   R = x->y ...              # optional; no closure applied
//!
//! `[model NAME]`
//!   cover = path/to/file
//!   universe = u v ...
//!   const c = u
//!   pred P/2:                 # lines `P(u,v) = { x y }`
//!
//! Relation sections like `R` are written verbatim: Def. 3 demands
//! reflexivity and transitivity of R, so they are checked downstream, never
//! silently completed.

use crate::algebra::{Algebra, AlgebraError};
use crate::cover::{CoverBackend, CoverError, CoverSystem};
use crate::logic::{LogicError, Model, Signature};
use crate::order::{bits, FinitePreorder, LatticeOrder, Mask, OrderError};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("no `[{0} ...]` block found")]
    MissingBlock(&'static str),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse { line, msg: msg.into() })
}

/// One raw block: header kind/name plus its numbered, comment-stripped lines.
struct Block {
    kind: String,
    name: String,
    lines: Vec<(usize, String)>,
}

fn split_blocks(text: &str) -> Result<Vec<Block>, FormatError> {
    let mut blocks: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        if let Some(header) = line.strip_prefix('[') {
            let header = match header.strip_suffix(']') {
                Some(h) => h,
                None => return err(lineno, "unterminated block header"),
            };
            let mut parts = header.split_whitespace();
            let kind = parts.next().unwrap_or_default().to_string();
            let name = parts.next().unwrap_or_default().to_string();
            if !matches!(kind.as_str(), "algebra" | "cover" | "model") || name.is_empty() {
                return err(lineno, format!("bad block header `[{header}]`"));
            }
            blocks.push(Block { kind, name, lines: Vec::new() });
        } else {
            match blocks.last_mut() {
                Some(b) => b.lines.push((lineno, line.to_string())),
                None => return err(lineno, "content before any block header"),
            }
        }
    }
    if blocks.is_empty() {
        return err(0, "empty document");
    }
    Ok(blocks)
}

const FORBIDDEN: &[char] = &['#', '*', '<', '=', '>', '!', '?', '|', '(', ')', '/'];

/// Algebra elements may be set literals like `{bot,top}` (the proposition
/// algebra emits those); cover points and model names may not, since braces
/// and commas are structural there.
fn check_name(line: usize, name: &str, braces_ok: bool) -> Result<(), FormatError> {
    let bad = name.is_empty()
        || name.contains(FORBIDDEN)
        || (!braces_ok && name.contains(['{', '}', ',']));
    if bad {
        return err(line, format!("bad element name `{name}`"));
    }
    Ok(())
}

/// `key = v1 v2 ...` → (key, values); None when the line is not of that shape.
fn key_value(line: &str) -> Option<(&str, Vec<&str>)> {
    let (key, rest) = line.split_once('=')?;
    let key = key.trim();
    if key.contains(char::is_whitespace) || key.is_empty() {
        return None;
    }
    Some((key, rest.split_whitespace().collect()))
}

fn relation_pairs(
    line: usize,
    tokens: &[&str],
    sep: &str,
    index: &HashMap<String, usize>,
) -> Result<Vec<(usize, usize)>, FormatError> {
    let mut out = Vec::new();
    for t in tokens {
        let Some((a, b)) = t.split_once(sep) else {
            return err(line, format!("expected `a{sep}b`, got `{t}`"));
        };
        out.push((resolve(line, a, index)?, resolve(line, b, index)?));
    }
    Ok(out)
}

fn resolve(line: usize, name: &str, index: &HashMap<String, usize>) -> Result<usize, FormatError> {
    match index.get(name) {
        Some(&i) => Ok(i),
        None => err(line, format!("unknown element `{name}`")),
    }
}

/// `{ a b c }` written as whitespace tokens → mask.
fn parse_set(
    line: usize,
    tokens: &[&str],
    index: &HashMap<String, usize>,
) -> Result<Mask, FormatError> {
    if tokens.first() != Some(&"{") || tokens.last() != Some(&"}") {
        return err(line, "expected `{ ... }`");
    }
    let mut mask = 0;
    for t in &tokens[1..tokens.len() - 1] {
        mask |= 1 << resolve(line, t, index)?;
    }
    Ok(mask)
}

fn index_of(names: &[String]) -> HashMap<String, usize> {
    names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect()
}

fn parse_algebra_block(b: &Block) -> Result<Algebra, FormatError> {
    let mut elements: Option<Vec<String>> = None;
    let mut order_pairs = Vec::new();
    let mut unit = None;
    let mut zero = None;
    let mut fusion: Option<Vec<Vec<Option<usize>>>> = None;
    let mut bang: Option<Vec<Option<usize>>> = None;
    let mut quest: Option<Vec<Option<usize>>> = None;
    let mut section = "";
    let mut index = HashMap::new();

    for (lineno, line) in &b.lines {
        let lineno = *lineno;
        if let Some(sec) = line.strip_suffix(':') {
            section = match sec {
                "fusion" | "bang" | "quest" => sec,
                other => return err(lineno, format!("unknown section `{other}:`")),
            };
            let n = elements.as_ref().map(|e| e.len()).unwrap_or(0);
            match section {
                "fusion" => fusion = Some(vec![vec![None; n]; n]),
                "bang" => bang = Some(vec![None; n]),
                _ => quest = Some(vec![None; n]),
            }
            continue;
        }
        let Some((key, vals)) = key_value(line) else {
            return err(lineno, "expected `key = ...` or a section header");
        };
        match (section, key) {
            (_, "elements") => {
                let names: Vec<String> = vals.iter().map(|s| s.to_string()).collect();
                for n in &names {
                    check_name(lineno, n, true)?;
                }
                index = index_of(&names);
                if index.len() != names.len() {
                    return err(lineno, "duplicate element name");
                }
                elements = Some(names);
            }
            (_, "order") => order_pairs.extend(relation_pairs(lineno, &vals, "<=", &index)?),
            (_, "unit") => match vals.as_slice() {
                [e] => unit = Some(resolve(lineno, e, &index)?),
                _ => return err(lineno, "unit wants one element"),
            },
            (_, "zero") => match vals.as_slice() {
                [e] => zero = Some(resolve(lineno, e, &index)?),
                _ => return err(lineno, "zero wants one element"),
            },
            ("fusion", lhs) => {
                let Some((a, b2)) = lhs.split_once('*') else {
                    return err(lineno, format!("expected `a*b = c`, got `{lhs}`"));
                };
                let (a, b2) = (resolve(lineno, a, &index)?, resolve(lineno, b2, &index)?);
                let [c] = vals.as_slice() else {
                    return err(lineno, "fusion entry wants one result");
                };
                fusion.as_mut().unwrap()[a][b2] = Some(resolve(lineno, c, &index)?);
            }
            ("bang", lhs) | ("quest", lhs) => {
                let prefix = if section == "bang" { '!' } else { '?' };
                let Some(a) = lhs.strip_prefix(prefix) else {
                    return err(lineno, format!("expected `{prefix}a = b`, got `{lhs}`"));
                };
                let a = resolve(lineno, a, &index)?;
                let [v] = vals.as_slice() else {
                    return err(lineno, "modality entry wants one result");
                };
                let v = resolve(lineno, v, &index)?;
                if section == "bang" {
                    bang.as_mut().unwrap()[a] = Some(v);
                } else {
                    quest.as_mut().unwrap()[a] = Some(v);
                }
            }
            (_, other) => return err(lineno, format!("unknown key `{other}`")),
        }
    }

    let names = elements.ok_or(FormatError::Parse {
        line: 0,
        msg: format!("[algebra {}] has no `elements =` line", b.name),
    })?;
    let n = names.len();
    let pre = FinitePreorder::from_pairs(names, &order_pairs)?;
    let order = LatticeOrder::new(pre)?;
    let fusion = fusion
        .ok_or_else(|| FormatError::Parse { line: 0, msg: "missing `fusion:` section".into() })?;
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for c in 0..n {
            table[a][c] = fusion[a][c].ok_or_else(|| FormatError::Parse {
                line: 0,
                msg: format!("fusion entry missing for ({a},{c})"),
            })?;
        }
    }
    let unpack = |t: Option<Vec<Option<usize>>>, label: &str| -> Result<Option<Vec<usize>>, FormatError> {
        match t {
            None => Ok(None),
            Some(v) => v
                .into_iter()
                .enumerate()
                .map(|(i, e)| {
                    e.ok_or_else(|| FormatError::Parse {
                        line: 0,
                        msg: format!("{label} entry missing for element {i}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
        }
    };
    let unit = unit
        .ok_or_else(|| FormatError::Parse { line: 0, msg: "missing `unit =` line".into() })?;
    Ok(Algebra::new(&b.name, order, table, unit, zero, unpack(bang, "bang")?, unpack(quest, "quest")?)?)
}

fn parse_cover_block(b: &Block, algebras: &[Algebra]) -> Result<CoverSystem, FormatError> {
    let mut points: Option<Vec<String>> = None;
    let mut pre_pairs = Vec::new();
    let mut epsilon = None;
    let mut zero = None;
    let mut i_set = None;
    let mut r_pairs: Option<Vec<(usize, usize)>> = None;
    let mut fusion: Option<Vec<Vec<Option<usize>>>> = None;
    let mut covers: Vec<(usize, Mask)> = Vec::new();
    let mut lattice: Option<LatticeOrder> = None;
    let mut saw_covers = false;
    let mut section = "";
    let mut index = HashMap::new();

    for (lineno, line) in &b.lines {
        let lineno = *lineno;
        if let Some(sec) = line.strip_suffix(':') {
            section = match sec {
                "fusion" | "covers" => sec,
                other => return err(lineno, format!("unknown section `{other}:`")),
            };
            let n = points.as_ref().map(|e| e.len()).unwrap_or(0);
            if section == "fusion" {
                fusion = Some(vec![vec![None; n]; n]);
            } else {
                saw_covers = true;
            }
            continue;
        }
        let covers_line = section == "covers"
            && (line.split_whitespace().nth(1) == Some("<|")
                || line.split_whitespace().next() == Some("backend"));
        if covers_line {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() == Some(&"backend") {
                // backend = lattice-join order = <algebra-name-or-pairs>
                if toks.get(1) != Some(&"=")
                    || toks.get(2) != Some(&"lattice-join")
                    || toks.get(3) != Some(&"order")
                    || toks.get(4) != Some(&"=")
                {
                    return err(lineno, "expected `backend = lattice-join order = ...`");
                }
                let rest = &toks[5..];
                let names = points.clone().ok_or(FormatError::Parse {
                    line: lineno,
                    msg: "`points =` must precede `covers:`".into(),
                })?;
                lattice = Some(match rest {
                    [one] if !one.contains("<=") => {
                        let a = algebras
                            .iter()
                            .find(|a| a.name == *one)
                            .ok_or_else(|| FormatError::Parse {
                                line: lineno,
                                msg: format!("no [algebra {one}] block in this document"),
                            })?;
                        if a.len() != names.len() {
                            return err(lineno, "order algebra size differs from points");
                        }
                        a.order.clone()
                    }
                    pairs => {
                        let pairs = relation_pairs(lineno, pairs, "<=", &index)?;
                        LatticeOrder::new(FinitePreorder::from_pairs(names, &pairs)?)?
                    }
                });
                continue;
            }
            // x <| { y z }
            if toks.get(1) != Some(&"<|") {
                return err(lineno, "expected `x <| { ... }` or a backend line");
            }
            let x = resolve(lineno, toks[0], &index)?;
            let c = parse_set(lineno, &toks[2..], &index)?;
            covers.push((x, c));
            continue;
        }
        let Some((key, vals)) = key_value(line) else {
            return err(lineno, "expected `key = ...` or a section header");
        };
        match (section, key) {
            (_, "points") => {
                let names: Vec<String> = vals.iter().map(|s| s.to_string()).collect();
                for n in &names {
                    check_name(lineno, n, false)?;
                }
                index = index_of(&names);
                if index.len() != names.len() {
                    return err(lineno, "duplicate point name");
                }
                points = Some(names);
            }
            (_, "preorder") => pre_pairs.extend(relation_pairs(lineno, &vals, "<=", &index)?),
            (_, "epsilon") => match vals.as_slice() {
                [e] => epsilon = Some(resolve(lineno, e, &index)?),
                _ => return err(lineno, "epsilon wants one point"),
            },
            (_, "zero") => zero = Some(parse_set(lineno, &vals, &index)?),
            (_, "I") => i_set = Some(parse_set(lineno, &vals, &index)?),
            (_, "R") => r_pairs
                .get_or_insert_with(Vec::new)
                .extend(relation_pairs(lineno, &vals, "->", &index)?),
            ("fusion", lhs) => {
                let Some((a, b2)) = lhs.split_once('*') else {
                    return err(lineno, format!("expected `x*y = z`, got `{lhs}`"));
                };
                let (a, b2) = (resolve(lineno, a, &index)?, resolve(lineno, b2, &index)?);
                let [c] = vals.as_slice() else {
                    return err(lineno, "fusion entry wants one result");
                };
                fusion.as_mut().unwrap()[a][b2] = Some(resolve(lineno, c, &index)?);
            }
            (_, other) => return err(lineno, format!("unknown key `{other}`")),
        }
    }

    let names = points.ok_or(FormatError::Parse {
        line: 0,
        msg: format!("[cover {}] has no `points =` line", b.name),
    })?;
    let n = names.len();
    if !saw_covers {
        return err(0, "missing `covers:` section");
    }
    let pre = FinitePreorder::from_pairs(names, &pre_pairs)?;
    let backend = match lattice {
        Some(lat) => CoverBackend::LatticeJoin(lat),
        None => CoverBackend::Extensional(covers),
    };
    let dot = match fusion {
        None => None,
        Some(f) => {
            let mut table = vec![vec![0; n]; n];
            for a in 0..n {
                for c in 0..n {
                    table[a][c] = f[a][c].ok_or_else(|| FormatError::Parse {
                        line: 0,
                        msg: format!("fusion entry missing for ({a},{c})"),
                    })?;
                }
            }
            Some(table)
        }
    };
    let r = r_pairs.map(|pairs| {
        let mut rel = vec![0 as Mask; n];
        for (x, y) in pairs {
            rel[x] |= 1 << y;
        }
        rel
    });
    Ok(CoverSystem { name: b.name.clone(), pre, backend, dot, epsilon, zero, i_set, r })
}

/// A parsed `[model]` block before its cover file is loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDoc {
    pub name: String,
    pub cover_path: String,
    pub universe: Vec<String>,
    pub const_interp: Vec<(String, String)>,
    /// (predicate, arity, entries of (argument names, point names))
    pub predicates: Vec<(String, usize, Vec<(Vec<String>, Vec<String>)>)>,
}

fn parse_model_block(b: &Block) -> Result<ModelDoc, FormatError> {
    let mut doc = ModelDoc {
        name: b.name.clone(),
        cover_path: String::new(),
        universe: Vec::new(),
        const_interp: Vec::new(),
        predicates: Vec::new(),
    };
    let mut in_pred = false;
    for (lineno, line) in &b.lines {
        let lineno = *lineno;
        if let Some(head) = line.strip_suffix(':') {
            let toks: Vec<&str> = head.split_whitespace().collect();
            match toks.as_slice() {
                ["pred", spec] => {
                    let Some((p, arity)) = spec.split_once('/') else {
                        return err(lineno, format!("expected `pred P/n:`, got `{spec}`"));
                    };
                    let arity: usize = arity
                        .parse()
                        .map_err(|_| FormatError::Parse {
                            line: lineno,
                            msg: format!("bad arity `{arity}`"),
                        })?;
                    check_name(lineno, p, false)?;
                    doc.predicates.push((p.to_string(), arity, Vec::new()));
                    in_pred = true;
                    continue;
                }
                _ => return err(lineno, format!("unknown section `{head}:`")),
            }
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["cover", "=", path] => {
                doc.cover_path = path.to_string();
                in_pred = false;
            }
            ["universe", "=", rest @ ..] => {
                for u in rest {
                    check_name(lineno, u, false)?;
                    doc.universe.push(u.to_string());
                }
                in_pred = false;
            }
            ["const", c, "=", u] => {
                check_name(lineno, c, false)?;
                doc.const_interp.push((c.to_string(), u.to_string()));
                in_pred = false;
            }
            [app, "=", rest @ ..] if in_pred => {
                let (p, arity, entries) = doc.predicates.last_mut().unwrap();
                let args: Vec<String> = match app.split_once('(') {
                    None if *arity == 0 && *app == *p => Vec::new(),
                    Some((head, tail)) if head == p && tail.ends_with(')') => tail
                        [..tail.len() - 1]
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .collect(),
                    _ => return err(lineno, format!("expected `{p}(...) = {{ ... }}`")),
                };
                if args.len() != *arity {
                    return err(lineno, format!("`{p}` wants {arity} arguments"));
                }
                if rest.first() != Some(&"{") || rest.last() != Some(&"}") {
                    return err(lineno, "expected `{ ... }`");
                }
                let pts = rest[1..rest.len() - 1].iter().map(|s| s.to_string()).collect();
                entries.push((args, pts));
            }
            _ => return err(lineno, "unrecognized model line"),
        }
    }
    if doc.cover_path.is_empty() {
        return err(0, "missing `cover =` line");
    }
    if doc.universe.is_empty() {
        return err(0, "missing or empty `universe =` line");
    }
    Ok(doc)
}

/// Parse the first `[algebra]` block of a document.
pub fn parse_algebra(text: &str) -> Result<Algebra, FormatError> {
    let blocks = split_blocks(text)?;
    let block = blocks
        .iter()
        .find(|b| b.kind == "algebra")
        .ok_or(FormatError::MissingBlock("algebra"))?;
    parse_algebra_block(block)
}

/// Parse the first `[cover]` block; a lattice-join backend may reference an
/// `[algebra]` block in the same document by name.
pub fn parse_cover(text: &str) -> Result<CoverSystem, FormatError> {
    let blocks = split_blocks(text)?;
    let algebras: Vec<Algebra> = blocks
        .iter()
        .filter(|b| b.kind == "algebra")
        .map(parse_algebra_block)
        .collect::<Result<_, _>>()?;
    let block =
        blocks.iter().find(|b| b.kind == "cover").ok_or(FormatError::MissingBlock("cover"))?;
    parse_cover_block(block, &algebras)
}

/// Parse the first `[model]` block, without loading its cover file.
pub fn parse_model(text: &str) -> Result<ModelDoc, FormatError> {
    let blocks = split_blocks(text)?;
    let block =
        blocks.iter().find(|b| b.kind == "model").ok_or(FormatError::MissingBlock("model"))?;
    parse_model_block(block)
}

/// Bind a parsed model block to its (already loaded) cover system.
pub fn resolve_model(doc: &ModelDoc, system: CoverSystem) -> Result<Model, FormatError> {
    let u_index = index_of(&doc.universe);
    let p_index = index_of(&(0..system.len()).map(|x| system.name_of(x).to_string()).collect::<Vec<_>>());
    let mut const_interp = HashMap::new();
    let mut constants = Vec::new();
    for (c, u) in &doc.const_interp {
        let i = *u_index.get(u).ok_or_else(|| FormatError::Parse {
            line: 0,
            msg: format!("constant `{c}` maps to unknown universe member `{u}`"),
        })?;
        constants.push(c.clone());
        const_interp.insert(c.clone(), i);
    }
    let mut predicates = Vec::new();
    let mut pred_interp = HashMap::new();
    for (p, arity, entries) in &doc.predicates {
        predicates.push((p.clone(), *arity));
        let mut table = HashMap::new();
        for (args, pts) in entries {
            let args: Vec<usize> = args
                .iter()
                .map(|a| {
                    u_index.get(a).copied().ok_or_else(|| FormatError::Parse {
                        line: 0,
                        msg: format!("unknown universe member `{a}` in `{p}` entry"),
                    })
                })
                .collect::<Result<_, _>>()?;
            let mut mask: Mask = 0;
            for pt in pts {
                mask |= 1 << p_index.get(pt).copied().ok_or_else(|| FormatError::Parse {
                    line: 0,
                    msg: format!("unknown point `{pt}` in `{p}` entry"),
                })?;
            }
            table.insert(args, mask);
        }
        pred_interp.insert(p.clone(), table);
    }
    let sig = Signature { constants, predicates };
    Ok(Model::new(system, doc.universe.clone(), sig, const_interp, pred_interp)?)
}

fn set_tokens(names: &[String], mask: Mask) -> String {
    let inner: Vec<&str> = bits(mask).map(|x| names[x].as_str()).collect();
    format!("{{ {}}}", inner.iter().map(|s| format!("{s} ")).collect::<String>())
}

/// Print an algebra as a parseable `[algebra]` block.
pub fn print_algebra(a: &Algebra) -> String {
    let n = a.len();
    let names: Vec<String> = (0..n).map(|e| a.name_of(e).to_string()).collect();
    let mut out = format!("[algebra {}]\n", a.name);
    out += &format!("elements = {}\n", names.join(" "));
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && a.leq(x, y) {
                pairs.push(format!("{}<={}", names[x], names[y]));
            }
        }
    }
    out += &format!("order = {}\n", pairs.join(" "));
    out += &format!("unit = {}\n", names[a.unit]);
    if let Some(z) = a.zero {
        out += &format!("zero = {}\n", names[z]);
    }
    out += "fusion:\n";
    for x in 0..n {
        for y in 0..n {
            out += &format!("{}*{} = {}\n", names[x], names[y], names[a.fuse(x, y)]);
        }
    }
    if let Some(bang) = &a.bang {
        out += "bang:\n";
        for x in 0..n {
            out += &format!("!{} = {}\n", names[x], names[bang[x]]);
        }
    }
    if let Some(quest) = &a.quest {
        out += "quest:\n";
        for x in 0..n {
            out += &format!("?{} = {}\n", names[x], names[quest[x]]);
        }
    }
    out
}

/// Print a cover system as a parseable `[cover]` block. The lattice-join
/// backend is written with inline order generator pairs.
pub fn print_cover(s: &CoverSystem) -> String {
    let n = s.len();
    let names: Vec<String> = (0..n).map(|x| s.name_of(x).to_string()).collect();
    let mut out = format!("[cover {}]\n", s.name);
    out += &format!("points = {}\n", names.join(" "));
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && s.pre.leq(x, y) {
                pairs.push(format!("{}<={}", names[x], names[y]));
            }
        }
    }
    out += &format!("preorder = {}\n", pairs.join(" "));
    if let Some(e) = s.epsilon {
        out += &format!("epsilon = {}\n", names[e]);
    }
    if let Some(dot) = &s.dot {
        out += "fusion:\n";
        for x in 0..n {
            for y in 0..n {
                out += &format!("{}*{} = {}\n", names[x], names[y], names[dot[x][y]]);
            }
        }
    }
    out += "covers:\n";
    match &s.backend {
        CoverBackend::Extensional(list) => {
            for &(x, c) in list {
                out += &format!("{} <| {}\n", names[x], set_tokens(&names, c));
            }
        }
        CoverBackend::LatticeJoin(lat) => {
            let mut pairs = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if x != y && lat.leq(x, y) {
                        pairs.push(format!("{}<={}", names[x], names[y]));
                    }
                }
            }
            out += &format!("backend = lattice-join order = {}\n", pairs.join(" "));
        }
    }
    if let Some(z) = s.zero {
        out += &format!("zero = {}\n", set_tokens(&names, z));
    }
    if let Some(i) = s.i_set {
        out += &format!("I = {}\n", set_tokens(&names, i));
    }
    if let Some(r) = &s.r {
        let mut pairs = Vec::new();
        for (x, row) in r.iter().enumerate() {
            for y in bits(*row) {
                pairs.push(format!("{}->{}", names[x], names[y]));
            }
        }
        out += &format!("R = {}\n", pairs.join(" "));
    }
    out
}

/// Print a model block (the cover system stays in its own file).
pub fn print_model(doc: &ModelDoc) -> String {
    let mut out = format!("[model {}]\n", doc.name);
    out += &format!("cover = {}\n", doc.cover_path);
    out += &format!("universe = {}\n", doc.universe.join(" "));
    for (c, u) in &doc.const_interp {
        out += &format!("const {c} = {u}\n");
    }
    for (p, arity, entries) in &doc.predicates {
        out += &format!("pred {p}/{arity}:\n");
        for (args, pts) in entries {
            let app = if args.is_empty() { p.clone() } else { format!("{p}({})", args.join(",")) };
            let inner: String = pts.iter().map(|s| format!("{s} ")).collect();
            out += &format!("{app} = {{ {inner}}}\n");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn algebra_round_trip_fixtures() {
        for a in [fixtures::bool2(), fixtures::luk3(), fixtures::heyting3(), fixtures::one1()] {
            let text = print_algebra(&a);
            let back = parse_algebra(&text).unwrap();
            assert_eq!(back, a, "round trip failed for {}:\n{text}", a.name);
        }
    }

    #[test]
    fn cover_round_trip_fixtures() {
        for s in [
            fixtures::cov2(),
            fixtures::rcov1_modal(),
            fixtures::canonical_of(&fixtures::bool2()),
            fixtures::canonical_of(&fixtures::luk3()),
        ] {
            let text = print_cover(&s);
            let back = parse_cover(&text).unwrap();
            assert_eq!(back.name, s.name);
            assert_eq!(back.pre, s.pre, "{text}");
            assert_eq!(back.dot, s.dot);
            assert_eq!(back.epsilon, s.epsilon);
            assert_eq!(back.zero, s.zero);
            assert_eq!(back.i_set, s.i_set);
            assert_eq!(back.r, s.r);
            match (&back.backend, &s.backend) {
                (CoverBackend::Extensional(a), CoverBackend::Extensional(b)) => assert_eq!(a, b),
                (CoverBackend::LatticeJoin(a), CoverBackend::LatticeJoin(b)) => {
                    assert_eq!(a.pre(), b.pre())
                }
                _ => panic!("backend kind changed"),
            }
        }
    }

    #[test]
    fn model_round_trip() {
        let doc = ModelDoc {
            name: "M".into(),
            cover_path: "bool2-cover.flc".into(),
            universe: vec!["u".into(), "v".into()],
            const_interp: vec![("c".into(), "u".into())],
            predicates: vec![(
                "P".into(),
                1,
                vec![
                    (vec!["u".into()], vec!["bot".into()]),
                    (vec!["v".into()], vec!["bot".into(), "top".into()]),
                ],
            )],
        };
        let text = print_model(&doc);
        assert_eq!(parse_model(&text).unwrap(), doc);
    }

    #[test]
    fn resolve_model_against_canonical_bool2() {
        let doc = ModelDoc {
            name: "M".into(),
            cover_path: "ignored".into(),
            universe: vec!["u".into()],
            const_interp: vec![],
            predicates: vec![("P".into(), 1, vec![(vec!["u".into()], vec!["bot".into()])])],
        };
        let m = resolve_model(&doc, fixtures::canonical_of(&fixtures::bool2())).unwrap();
        assert_eq!(m.pred_interp["P"][&vec![0]], 0b01);
    }

    #[test]
    fn cover_with_named_algebra_order() {
        let a = fixtures::bool2();
        let text = format!(
            "{}\n[cover S]\npoints = bot top\npreorder = top<=bot\ncovers:\nbackend = lattice-join order = BOOL2\n",
            print_algebra(&a)
        );
        let s = parse_cover(&text).unwrap();
        assert!(matches!(s.backend, CoverBackend::LatticeJoin(_)));
        assert_eq!(s.j(0), 0b01);
    }

    #[test]
    fn comments_and_blank_lines_ignored(){
        let text = "# header comment\n[algebra A]\nelements = e # trailing\norder =\nunit = e\n\nfusion:\ne*e = e\n";
        let a = parse_algebra(&text).unwrap();
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(parse_algebra("").is_err());
        assert!(parse_algebra("[algebra A]\nunit = e\n").is_err());
        assert!(parse_algebra("[cover C]\npoints = x\ncovers:\nx <| { x }\n").is_err());
        // unknown element in fusion
        assert!(parse_algebra(
            "[algebra A]\nelements = e\norder =\nunit = e\nfusion:\ne*f = e\n"
        )
        .is_err());
        // incomplete fusion table
        assert!(parse_algebra(
            "[algebra A]\nelements = a b\norder = a<=b\nunit = b\nfusion:\na*a = a\n"
        )
        .is_err());
        // not a lattice: two incomparable points with no bounds
        assert!(parse_algebra(
            "[algebra A]\nelements = a b\norder =\nunit = a\nfusion:\na*a = a\na*b = b\nb*a = b\nb*b = b\n"
        )
        .is_err());
        // bad cover set syntax
        assert!(parse_cover("[cover C]\npoints = x\ncovers:\nx <| x\n").is_err());
        // model without universe
        assert!(parse_model("[model M]\ncover = f\n").is_err());
    }
}
