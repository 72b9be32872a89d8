//! Text formats: group tables, polycyclic presentations, subset word lists
//! and line-oriented certificates.

use std::collections::HashMap;
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::group::{ConjugateRelation, FiniteGroup, PcPresentation, PcWord};
use crate::{Error, Result};

/// The 133 words of the bundled order-512 subset, one per line.
pub const ORDER512_WORDS: &str = include_str!("../data/order512.words");

pub const TOOL: &str = concat!("pdslab ", env!("CARGO_PKG_VERSION"));

/// How a word `a*b*c` is multiplied out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WordOrder {
    /// `(a·b)·c`.
    #[default]
    LeftToRight,
    /// `c·b·a`.
    RightToLeft,
}

impl std::str::FromStr for WordOrder {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ltr" | "left-to-right" => Ok(WordOrder::LeftToRight),
            "rtl" | "right-to-left" => Ok(WordOrder::RightToLeft),
            _ => Err(Error::InvalidParams(format!("unknown word order {s:?} (use ltr or rtl)"))),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Evaluates a word such as `s^6*t` or `f1*f4*f5` over named generators.
///
/// `names[i]` names `group.generators()[i]`; an empty name is unusable.
/// Exponents may be negative. `1` is the identity.
pub fn parse_word(group: &FiniteGroup, names: &[String], word: &str, order: WordOrder) -> Result<usize> {
    let word: String = word.chars().filter(|c| !c.is_whitespace()).collect();
    if word.is_empty() {
        return Err(Error::parse(0, "empty word"));
    }
    let mut factors = Vec::new();
    for tok in word.split('*') {
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => {
                let e: i64 = e
                    .trim_start_matches('(')
                    .trim_end_matches(')')
                    .parse()
                    .map_err(|_| Error::parse(0, format!("bad exponent in {tok:?}")))?;
                (n, e)
            }
            None => (tok, 1),
        };
        let base = if name == "1" {
            0
        } else {
            let i = names
                .iter()
                .position(|n| !n.is_empty() && n == name)
                .ok_or_else(|| Error::parse(0, format!("unknown generator {name:?}")))?;
            group.generators()[i]
        };
        factors.push(group.pow(base, exp));
    }
    if order == WordOrder::RightToLeft {
        factors.reverse();
    }
    Ok(factors.into_iter().fold(0, |acc, f| group.mul(acc, f)))
}

/// Reads a subset given as words.
///
/// Accepted shapes: one word per line, or comma-separated lists optionally in
/// brackets with an `NAME:=` prefix and `;` terminators. A first line
/// `subset-words` is skipped; a line `labels a b _ c` renames the generators
/// in order (`_` leaves one unnamed). `#` starts a comment. Repeated elements
/// are rejected.
pub fn parse_subset_words(
    text: &str,
    group: &FiniteGroup,
    default_names: &[String],
    order: WordOrder,
) -> Result<Vec<usize>> {
    let mut names: Vec<String> = default_names.to_vec();
    let mut seen: HashMap<usize, (usize, String)> = HashMap::new();
    let mut subset = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let mut line = strip_comment(raw);
        if line.is_empty() || (line_no == 1 && line == "subset-words") {
            continue;
        }
        if let Some(rest) = line.strip_prefix("labels") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let given: Vec<&str> = rest.split_whitespace().collect();
                if given.len() > group.generators().len() {
                    return Err(Error::parse(
                        line_no,
                        format!("{} labels for {} generators", given.len(), group.generators().len()),
                    ));
                }
                names = given.iter().map(|&s| if s == "_" { String::new() } else { s.to_string() }).collect();
                names.resize(group.generators().len(), String::new());
                continue;
            }
        }
        if let Some((_, rest)) = line.split_once(":=") {
            line = rest;
        }
        for tok in line.split(',') {
            let w = tok.trim().trim_matches(|c| c == '[' || c == ']' || c == ';').trim();
            if w.is_empty() {
                continue;
            }
            let x = parse_word(group, &names, w, order).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(line_no, msg),
                e => e,
            })?;
            if let Some((l, prev)) = seen.get(&x) {
                return Err(Error::parse(
                    line_no,
                    format!("{w:?} is the same element as {prev:?} on line {l}"),
                ));
            }
            seen.insert(x, (line_no, w.to_string()));
            subset.push(x);
        }
    }
    subset.sort_unstable();
    Ok(subset)
}

/// Words for the given elements: the group's own labels when they re-parse
/// over `names`, else shortest words in the generators.
pub fn element_words(group: &FiniteGroup, names: &[String], elements: &[usize]) -> Vec<String> {
    if let Some(labels) = group.labels() {
        let ok = elements
            .iter()
            .all(|&x| parse_word(group, names, &labels[x], WordOrder::LeftToRight).ok() == Some(x));
        if ok {
            return elements.iter().map(|&x| labels[x].clone()).collect();
        }
    }
    let words = group.words(names);
    elements.iter().map(|&x| words[x].clone()).collect()
}

/// The subset as a `subset-words` file over the group's generator names.
pub fn write_subset_file(group: &FiniteGroup, subset: &[usize]) -> String {
    let names = group.generator_names();
    let mut out = String::from("subset-words\n");
    let _ = writeln!(out, "labels {}", names.join(" "));
    for w in element_words(group, &names, subset) {
        let _ = writeln!(out, "{w}");
    }
    out
}

/// `group-table v`, the generator indices, `v` rows of the table and, when the
/// group is labelled, a `labels` line followed by one label per element.
pub fn write_group_file(group: &FiniteGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group-table {}", group.order());
    let gens: Vec<String> = group.generators().iter().map(usize::to_string).collect();
    let _ = writeln!(out, "{}", gens.join(" "));
    for row in group.table_rows() {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    if let Some(labels) = group.labels() {
        out.push_str("labels\n");
        for l in labels {
            let _ = writeln!(out, "{l}");
        }
    }
    out
}

/// Hex SHA-256 of [`write_group_file`].
pub fn table_sha256(group: &FiniteGroup) -> String {
    let digest = Sha256::digest(write_group_file(group).as_bytes());
    digest.iter().fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

pub fn parse_group_file(text: &str) -> Result<FiniteGroup> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
    let v: usize = header
        .trim()
        .strip_prefix("group-table")
        .and_then(|s| s.trim().parse().ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| Error::parse(1, "expected `group-table v`"))?;
    if v > crate::group::max_order() {
        return Err(Error::OrderCap { cap: crate::group::max_order() });
    }
    let (gl, gen_line) = lines.next().ok_or_else(|| Error::parse(2, "missing generator line"))?;
    let generators = gen_line
        .split_whitespace()
        .map(|t| t.parse::<usize>().ok().filter(|&g| g < v))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::parse(gl, format!("generator indices must be integers below {v}")))?;
    let mut table = Vec::with_capacity(v);
    for r in 0..v {
        let (ln, line) = lines.next().ok_or_else(|| Error::parse(3 + r, format!("missing row {r}")))?;
        let row = line
            .split_whitespace()
            .enumerate()
            .map(|(c, t)| {
                t.parse::<u32>()
                    .ok()
                    .filter(|&x| (x as usize) < v)
                    .ok_or_else(|| Error::parse(ln, format!("row {r}, column {c}: {t:?} is not an index below {v}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if row.len() != v {
            return Err(Error::parse(ln, format!("row {r} has {} entries, expected {v}", row.len())));
        }
        let mut seen = vec![false; v];
        for (c, &x) in row.iter().enumerate() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::parse(ln, format!("row {r}, column {c}: {x} repeats in the row")));
            }
        }
        table.push(row);
    }
    for c in 0..v {
        let mut seen = vec![false; v];
        for (r, row) in table.iter().enumerate() {
            if std::mem::replace(&mut seen[row[c] as usize], true) {
                return Err(Error::parse(3 + r, format!("row {r}, column {c}: {} repeats in the column", row[c])));
            }
        }
    }
    let mut labels = None;
    while let Some((ln, line)) = lines.next() {
        match line.trim() {
            "" => continue,
            "labels" => {
                let l: Vec<String> = lines.by_ref().take(v).map(|(_, s)| s.trim().to_string()).collect();
                if l.len() != v {
                    return Err(Error::parse(ln, format!("expected {v} labels, found {}", l.len())));
                }
                labels = Some(l);
            }
            other => return Err(Error::parse(ln, format!("unexpected trailing line {other:?}"))),
        }
    }
    let mut g = FiniteGroup::from_table(table, generators).map_err(|e| Error::parse(3, e.to_string()))?;
    if let Some(l) = labels {
        g.set_labels(l)?;
    }
    Ok(g)
}

fn parse_pc_word(s: &str, n: usize, line: usize) -> Result<PcWord> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut w = Vec::new();
    for tok in s.split('*') {
        let (name, e) = match tok.split_once('^') {
            Some((a, b)) => (a, b.parse::<usize>().map_err(|_| Error::parse(line, format!("bad exponent in {tok:?}")))?),
            None => (tok, 1),
        };
        let i = name
            .strip_prefix('f')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| (1..=n).contains(&i))
            .ok_or_else(|| Error::parse(line, format!("{name:?} is not one of f1..f{n}")))?;
        w.extend(std::iter::repeat_n(i - 1, e));
    }
    Ok(w)
}

/// Reads a polycyclic presentation.
///
/// ```text
/// pc 2
/// order 1 3
/// order 2 9
/// pow 1 = 1
/// conj 2 1 = f2^7      # f1⁻¹ f2 f1
/// comm 2 1 = f2^6      # [f2, f1] = f2⁻¹ f1⁻¹ f2 f1, the same relation
/// labels y x
/// ```
///
/// Indices are 1-based; words are `fA*fB^e*…` or `1`. Unlisted relations are trivial.
pub fn parse_pc_file(text: &str) -> Result<PcPresentation> {
    let mut pres: Option<PcPresentation> = None;
    let mut orders_set: Vec<bool> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap_or_default();
        if key == "pc" {
            if pres.is_some() {
                return Err(Error::parse(ln, "repeated `pc` header"));
            }
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::parse(ln, "expected `pc n`"))?;
            pres = Some(PcPresentation::new(vec![0; n]));
            orders_set = vec![false; n];
            continue;
        }
        let p = pres.as_mut().ok_or_else(|| Error::parse(ln, "the file must start with `pc n`"))?;
        let n = p.n_gens();
        let index = |s: Option<&str>| -> Result<usize> {
            s.and_then(|s| s.parse::<usize>().ok())
                .filter(|&i| (1..=n).contains(&i))
                .map(|i| i - 1)
                .ok_or_else(|| Error::parse(ln, format!("generator index must lie in 1..{n}")))
        };
        match key {
            "order" => {
                let g = index(parts.next())?;
                let o: u32 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .filter(|&o| o >= 2)
                    .ok_or_else(|| Error::parse(ln, "relative order must be an integer ≥ 2"))?;
                p.relative_orders[g] = o;
                orders_set[g] = true;
            }
            "pow" | "comm" | "conj" => {
                let (lhs, rhs) = line.split_once('=').ok_or_else(|| Error::parse(ln, "missing `=`"))?;
                let mut idx = lhs.split_whitespace().skip(1);
                let j = index(idx.next())?;
                let word = parse_pc_word(rhs, n, ln)?;
                if key == "pow" {
                    p.power_relations[j] = word;
                } else {
                    let i = index(idx.next())?;
                    if i >= j {
                        return Err(Error::parse(ln, format!("`{key} j i` needs j > i")));
                    }
                    let rel = if key == "comm" {
                        ConjugateRelation::Commutator(word)
                    } else {
                        ConjugateRelation::Conjugate(word)
                    };
                    p.conjugate_relations.insert((j, i), rel);
                }
                if idx.next().is_some() {
                    return Err(Error::parse(ln, "too many indices"));
                }
            }
            "labels" => {
                let l: Vec<String> = parts.map(str::to_string).collect();
                if l.len() != n {
                    return Err(Error::parse(ln, format!("{} labels for {n} generators", l.len())));
                }
                p.labels = l;
            }
            other => return Err(Error::parse(ln, format!("unknown keyword {other:?}"))),
        }
    }
    let p = pres.ok_or_else(|| Error::parse(1, "empty presentation"))?;
    if let Some(g) = orders_set.iter().position(|&s| !s) {
        return Err(Error::parse(0, format!("no relative order given for f{}", g + 1)));
    }
    Ok(p)
}

fn pc_word_text(w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let names: Vec<String> = (1..=w.iter().max().map_or(0, |&m| m + 1)).map(|i| format!("f{i}")).collect();
    crate::group::render_word(w, &names)
}

pub fn write_pc_file(p: &PcPresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pc {}", p.n_gens());
    for (i, o) in p.relative_orders.iter().enumerate() {
        let _ = writeln!(out, "order {} {o}", i + 1);
    }
    for (i, w) in p.power_relations.iter().enumerate() {
        if !w.is_empty() {
            let _ = writeln!(out, "pow {} = {}", i + 1, pc_word_text(w));
        }
    }
    for (&(j, i), rel) in &p.conjugate_relations {
        let (key, w) = match rel {
            ConjugateRelation::Commutator(w) => ("comm", w),
            ConjugateRelation::Conjugate(w) => ("conj", w),
        };
        let _ = writeln!(out, "{key} {} {} = {}", j + 1, i + 1, pc_word_text(w));
    }
    let _ = writeln!(out, "labels {}", p.labels.join(" "));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    PdsPass,
    PdsFail,
    SrgPass,
    SrgFail,
    Feasibility,
    PhiReport,
    Nonexistence,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::PdsPass => "pds_pass",
            CertificateKind::PdsFail => "pds_fail",
            CertificateKind::SrgPass => "srg_pass",
            CertificateKind::SrgFail => "srg_fail",
            CertificateKind::Feasibility => "feasibility",
            CertificateKind::PhiReport => "phi_report",
            CertificateKind::Nonexistence => "nonexistence",
        }
    }
}

/// Line-oriented `key: value` record. Field order is insertion order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub fields: Vec<(String, String)>,
}

impl Certificate {
    pub fn new(kind: CertificateKind) -> Certificate {
        Certificate { kind, fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.push(key, value);
        self
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Group descriptor fields: source, order, generators, table hash.
    pub fn with_group(mut self, source: &str, group: &FiniteGroup) -> Self {
        self.push("group.source", source);
        self.push("group.order", group.order());
        self.push("group.generators", group.generator_names().join(" "));
        self.push("group.table_sha256", table_sha256(group));
        self
    }

    /// Subset fields: sorted indices and words.
    pub fn with_subset(mut self, group: &FiniteGroup, subset: &[usize]) -> Self {
        let idx: Vec<String> = subset.iter().map(usize::to_string).collect();
        self.push("subset.size", subset.len());
        self.push("subset.indices", idx.join(" "));
        let words = element_words(group, &group.generator_names(), subset);
        self.push("subset.words", words.join(", "));
        self
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind: {}", self.kind.as_str());
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k}: {v}");
        }
        let _ = writeln!(out, "tool: {TOOL}");
        let _ = writeln!(out, "seed: none");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_from_pc_presentation, semidirect_cp_ct};

    fn c3() -> FiniteGroup {
        FiniteGroup::from_table(vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]], vec![1]).unwrap()
    }

    #[test]
    fn group_file_round_trip() {
        for g in [c3(), semidirect_cp_ct(7, 2).unwrap()] {
            let text = write_group_file(&g);
            let back = parse_group_file(&text).unwrap();
            assert_eq!(write_group_file(&back), text);
        }
        assert!(write_group_file(&c3()).starts_with("group-table 3\n1\n0 1 2\n"));
    }

    #[test]
    fn corrupted_rows_are_located() {
        let bad = "group-table 3\n1\n0 1 2\n1 2 0\n2 0 0\n";
        match parse_group_file(bad).unwrap_err() {
            Error::Parse { line, msg } => {
                assert_eq!(line, 5);
                assert!(msg.contains("row 2, column 2"), "{msg}");
            }
            e => panic!("{e}"),
        }
        assert!(matches!(parse_group_file("group-table 3\n1\n0 1 2\n1 2\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_group_file("table 3\n"), Err(Error::Parse { line: 1, .. })));
        // Latin but not a group with identity 0.
        let not_identity = "group-table 2\n1\n1 0\n0 1\n";
        assert!(parse_group_file(not_identity).is_err());
    }

    #[test]
    fn words_and_orders() {
        let g = semidirect_cp_ct(7, 2).unwrap();
        let names = g.generator_names();
        let st = parse_word(&g, &names, "s*t", WordOrder::LeftToRight).unwrap();
        let ts = parse_word(&g, &names, "s*t", WordOrder::RightToLeft).unwrap();
        assert_eq!(g.label(st), "s*t");
        assert_eq!(ts, parse_word(&g, &names, "t*s", WordOrder::LeftToRight).unwrap());
        assert_ne!(st, ts);
        assert_eq!(parse_word(&g, &names, "s^-1", WordOrder::LeftToRight).unwrap(), g.pow(g.generators()[0], 6));
        assert_eq!(parse_word(&g, &names, "1", WordOrder::LeftToRight).unwrap(), 0);
        assert!(parse_word(&g, &names, "u", WordOrder::LeftToRight).is_err());
    }

    #[test]
    fn subset_shapes() {
        let g = semidirect_cp_ct(7, 2).unwrap();
        let names = g.generator_names();
        let list = "S:= [ s, s^6, t, t^2, s*t, s*t^2,\n  s^5*t, s^3*t^2, s^6*t, s^4*t^2 ];;\n";
        let a = parse_subset_words(list, &g, &names, WordOrder::LeftToRight).unwrap();
        assert_eq!(a.len(), 10);
        let file = write_subset_file(&g, &a);
        assert!(file.starts_with("subset-words\nlabels s t\n"));
        assert_eq!(parse_subset_words(&file, &g, &[], WordOrder::LeftToRight).unwrap(), a);
        let renamed = "labels a b\n# comment\na^6*b\n";
        let b = parse_subset_words(renamed, &g, &names, WordOrder::LeftToRight).unwrap();
        assert_eq!(g.label(b[0]), "s^6*t");
        let err = parse_subset_words("s\ns^8\n", &g, &names, WordOrder::LeftToRight).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn order512_words_are_distinct() {
        let words: Vec<&str> = ORDER512_WORDS.lines().filter(|l| !l.trim().is_empty()).collect();
        assert_eq!(words.len(), 133);
        let mut sorted = words.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 133);
        assert_eq!(words[0], "f9");
        assert!(words.iter().all(|w| w.split('*').all(|f| f.starts_with('f'))));
    }

    #[test]
    fn pc_file_round_trip() {
        let text = "pc 2\norder 1 3\norder 2 9\nconj 2 1 = f2^7\nlabels y x\n";
        let p = parse_pc_file(text).unwrap();
        assert_eq!(write_pc_file(&p), text);
        let g = group_from_pc_presentation(&p).unwrap();
        assert_eq!(g.group.order(), 27);
        assert!(!g.group.is_abelian());
        let e = parse_pc_file("pc 3\norder 1 2\norder 2 2\norder 3 2\n").unwrap();
        let e = group_from_pc_presentation(&e).unwrap();
        assert_eq!(e.group.order(), 8);
        assert!(e.group.is_abelian());
        assert!(parse_pc_file("pc 2\norder 1 3\n").is_err());
        assert!(matches!(parse_pc_file("pc 2\norder 1 3\norder 2 3\ncomm 1 2 = f2\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_pc_file("order 1 3\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn certificate_layout() {
        let g = c3();
        let c = Certificate::new(CertificateKind::PdsPass).field("params", "(3,2,1,0)").with_group("table", &g).with_subset(&g, &[1, 2]);
        let text = c.render();
        assert!(text.starts_with("kind: pds_pass\nparams: (3,2,1,0)\ngroup.source: table\n"));
        assert!(text.ends_with("tool: pdslab 0.1.0\nseed: none\n"));
        assert_eq!(c.get("group.table_sha256").unwrap().len(), 64);
        assert_eq!(c.get("subset.words"), Some("g1, g1^2"));
    }
}
