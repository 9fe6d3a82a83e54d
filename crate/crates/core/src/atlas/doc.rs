use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::AtlasError;
use crate::omega::Pattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Proto,
    Holographic,
    Fillable,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Proto => "proto",
            Level::Holographic => "holographic",
            Level::Fillable => "fillable",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = AtlasError;
    fn from_str(s: &str) -> Result<Self, AtlasError> {
        match s {
            "proto" => Ok(Level::Proto),
            "holographic" => Ok(Level::Holographic),
            "fillable" => Ok(Level::Fillable),
            _ => Err(AtlasError::Malformed(format!("unknown level {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orient {
    Preserving,
    Reversing,
}

impl Orient {
    pub fn flipped(self) -> Orient {
        match self {
            Orient::Preserving => Orient::Reversing,
            Orient::Reversing => Orient::Preserving,
        }
    }
}

impl fmt::Display for Orient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orient::Preserving => "+",
            Orient::Reversing => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Selection {
    All,
    List(Vec<usize>),
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selection::All => f.write_str("all"),
            Selection::List(v) => f.write_str(&join_list(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartDecl {
    pub id: String,
    pub omega: Pattern,
    pub components: Selection,
}

/// `chart.face` or `chart.face#k`, the latter addressing one fiber component
/// of the face.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub chart: String,
    pub face: String,
    pub segment: Option<usize>,
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.chart, self.face)?;
        if let Some(k) = self.segment {
            write!(f, "#{k}")?;
        }
        Ok(())
    }
}

impl FromStr for FaceRef {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (chart, rest) = s
            .split_once('.')
            .ok_or_else(|| format!("face reference {s:?} lacks '.'"))?;
        let (face, segment) = match rest.split_once('#') {
            Some((face, k)) => (
                face,
                Some(k.parse::<usize>().map_err(|_| format!("bad segment in {s:?}"))?),
            ),
            None => (rest, None),
        };
        if !is_token(chart) || face.is_empty() || !face.chars().all(|c| c.is_ascii_alphanumeric() || "_+-".contains(c))
        {
            return Err(format!("bad face reference {s:?}"));
        }
        Ok(FaceRef {
            chart: chart.to_string(),
            face: face.to_string(),
            segment,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GlueDecl {
    pub a: FaceRef,
    pub b: FaceRef,
    /// Point `i` of `a` (in u-order) goes to point `points[i]` of `b`.
    pub points: Vec<usize>,
    /// Fiber component `c` of `a` goes to component `components[c]` of `b`.
    pub components: Vec<usize>,
    pub orient: Orient,
    pub filled: bool,
}

impl GlueDecl {
    pub fn label(&self) -> String {
        format!("{}~{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasDoc {
    pub n: u32,
    pub oriented: bool,
    pub charts: Vec<ChartDecl>,
    pub glues: Vec<GlueDecl>,
    /// Base chart for boundary connected sums.
    pub base: Option<String>,
    /// Level declared in a `# level:` comment.
    pub level: Option<Level>,
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Digits for short lists with single-digit entries, commas otherwise.
pub fn join_list(v: &[usize]) -> String {
    if v.iter().all(|&x| x < 10) {
        v.iter().map(usize::to_string).collect()
    } else {
        v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

pub fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    if s.is_empty() {
        return Err("empty index list".into());
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad index {t:?}")))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| format!("bad index {c:?}"))
            })
            .collect()
    }
}

fn key_values<'a>(words: &[&'a str], allowed: &[&str], lineno: usize) -> Result<Vec<(&'a str, &'a str)>, AtlasError> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in words {
        let (k, v) = w.split_once('=').ok_or_else(|| AtlasError::Parse {
            line: lineno,
            msg: format!("expected key=value, got {w:?}"),
        })?;
        if !allowed.contains(&k) {
            return Err(AtlasError::Parse {
                line: lineno,
                msg: format!("unknown key {k:?}"),
            });
        }
        if !seen.insert(k) {
            return Err(AtlasError::Parse {
                line: lineno,
                msg: format!("duplicate key {k:?}"),
            });
        }
        out.push((k, v));
    }
    for k in allowed {
        if !seen.contains(k) {
            return Err(AtlasError::Parse {
                line: lineno,
                msg: format!("missing key {k:?}"),
            });
        }
    }
    Ok(out)
}

fn flag(v: &str, lineno: usize) -> Result<bool, AtlasError> {
    match v {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(AtlasError::Parse {
            line: lineno,
            msg: format!("expected 0 or 1, got {v:?}"),
        }),
    }
}

impl AtlasDoc {
    pub fn parse(text: &str) -> Result<Self, AtlasError> {
        let mut header: Option<(u32, bool)> = None;
        let mut charts = Vec::new();
        let mut glues = Vec::new();
        let mut base = None;
        let mut level = None;
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(l) = comment.trim().strip_prefix("level:") {
                    level = Some(l.trim().parse::<Level>().map_err(|e| AtlasError::Parse {
                        line: lineno,
                        msg: e.to_string(),
                    })?);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| AtlasError::Parse { line: lineno, msg };
            match words[0] {
                "atlas" => {
                    if header.is_some() {
                        return Err(err("duplicate atlas header".into()));
                    }
                    let mut n = 0;
                    let mut oriented = false;
                    for (k, v) in key_values(&words[1..], &["n", "oriented"], lineno)? {
                        match k {
                            "n" => n = v.parse().map_err(|_| err(format!("bad dimension {v:?}")))?,
                            _ => oriented = flag(v, lineno)?,
                        }
                    }
                    header = Some((n, oriented));
                }
                _ if header.is_none() => return Err(err("expected the atlas header first".into())),
                "chart" => {
                    let id = words.get(1).copied().unwrap_or("");
                    if !is_token(id) || id.contains('=') {
                        return Err(err(format!("bad chart id {id:?}")));
                    }
                    let mut omega = None;
                    let mut components = Selection::All;
                    for (k, v) in key_values(&words[2..], &["omega", "components"], lineno)? {
                        match k {
                            "omega" => omega = Some(v.parse::<Pattern>().map_err(|e| err(e.to_string()))?),
                            _ => {
                                components = if v == "all" {
                                    Selection::All
                                } else {
                                    Selection::List(parse_list(v).map_err(err)?)
                                }
                            }
                        }
                    }
                    charts.push(ChartDecl {
                        id: id.to_string(),
                        omega: omega.expect("required key"),
                        components,
                    });
                }
                "glue" => {
                    if words.len() < 3 {
                        return Err(err("glue needs two face references".into()));
                    }
                    let a: FaceRef = words[1].parse().map_err(err)?;
                    let b: FaceRef = words[2].parse().map_err(err)?;
                    let mut g = GlueDecl {
                        a,
                        b,
                        points: Vec::new(),
                        components: Vec::new(),
                        orient: Orient::Preserving,
                        filled: false,
                    };
                    let keys = ["points", "components", "orient", "filled"];
                    for (k, v) in key_values(&words[3..], &keys, lineno)? {
                        match k {
                            "points" => g.points = parse_list(v).map_err(err)?,
                            "components" => g.components = parse_list(v).map_err(err)?,
                            "orient" => {
                                g.orient = match v {
                                    "+" => Orient::Preserving,
                                    "-" => Orient::Reversing,
                                    _ => return Err(err(format!("bad orient {v:?}"))),
                                }
                            }
                            _ => g.filled = flag(v, lineno)?,
                        }
                    }
                    glues.push(g);
                }
                "base" => {
                    if words.len() != 2 || !is_token(words[1]) || base.is_some() {
                        return Err(err("expected a single `base <chart-id>` line".into()));
                    }
                    base = Some(words[1].to_string());
                }
                other => return Err(err(format!("unknown directive {other:?}"))),
            }
        }
        let (n, oriented) = header.ok_or_else(|| AtlasError::Malformed("missing atlas header".into()))?;
        let doc = AtlasDoc {
            n,
            oriented,
            charts,
            glues,
            base,
            level,
        };
        doc.check_references()?;
        Ok(doc)
    }

    /// Rejects duplicate chart ids and references to undeclared charts.
    pub fn check_references(&self) -> Result<(), AtlasError> {
        let mut ids = BTreeSet::new();
        for c in &self.charts {
            if !ids.insert(c.id.as_str()) {
                return Err(AtlasError::Malformed(format!("duplicate chart id {:?}", c.id)));
            }
        }
        for g in &self.glues {
            for r in [&g.a, &g.b] {
                if !ids.contains(r.chart.as_str()) {
                    return Err(AtlasError::Malformed(format!(
                        "glue references unknown chart {:?}",
                        r.chart
                    )));
                }
            }
        }
        if let Some(b) = &self.base {
            if !ids.contains(b.as_str()) {
                return Err(AtlasError::Malformed(format!("base references unknown chart {b:?}")));
            }
        }
        Ok(())
    }

    pub fn chart(&self, id: &str) -> Option<&ChartDecl> {
        self.charts.iter().find(|c| c.id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(l) = self.level {
            out.push_str(&format!("# level: {l}\n"));
        }
        out.push_str(&format!("atlas n={} oriented={}\n", self.n, u8::from(self.oriented)));
        for c in &self.charts {
            out.push_str(&format!(
                "chart {} omega={} components={}\n",
                c.id, c.omega, c.components
            ));
        }
        for g in &self.glues {
            out.push_str(&format!(
                "glue {} {} points={} components={} orient={} filled={}\n",
                g.a,
                g.b,
                join_list(&g.points),
                join_list(&g.components),
                g.orient,
                u8::from(g.filled)
            ));
        }
        if let Some(b) = &self.base {
            out.push_str(&format!("base {b}\n"));
        }
        out
    }
}

impl FromStr for AtlasDoc {
    type Err = AtlasError;
    fn from_str(s: &str) -> Result<Self, AtlasError> {
        AtlasDoc::parse(s)
    }
}
