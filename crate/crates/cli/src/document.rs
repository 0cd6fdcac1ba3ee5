//! Line-oriented code documents. The grammar is described in `FORMAT.md`.

use std::fmt;
use std::sync::Arc;

use invcode_core::formations::{Formation, Submodule, SubmoduleCertificate};
use invcode_core::forms::LinkingForm;
use invcode_core::modules::Presentation;
use invcode_core::ring::{parse_int_matrix, parse_rat_matrix, IntMatrix, Mod1, RatMatrix};
use invcode_core::witt::FiniteQuadraticForm;

/// Error with a 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for DocError {}

fn at(line: usize, column: usize, message: impl Into<String>) -> DocError {
    DocError { line, column, message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Presentation,
    Form,
    Formation,
    Quadratic,
    Majorana,
}

impl Kind {
    pub fn keyword(self) -> &'static str {
        match self {
            Kind::Presentation => "presentation",
            Kind::Form => "form",
            Kind::Formation => "formation",
            Kind::Quadratic => "quadratic",
            Kind::Majorana => "majorana",
        }
    }

    fn parse(word: &str) -> Option<Kind> {
        [Kind::Presentation, Kind::Form, Kind::Formation, Kind::Quadratic, Kind::Majorana]
            .into_iter()
            .find(|k| k.keyword() == word)
    }

    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Kind::Presentation => (&["dimension", "matrix"], &[]),
            Kind::Form => (&["epsilon", "gram"], &["presentation", "dimension", "matrix"]),
            Kind::Formation => (&["form", "m_generators", "f_generators"], &["f_submodule", "f_quotient"]),
            Kind::Quadratic => (&["orders", "q"], &["b"]),
            Kind::Majorana => (&["modes", "generators"], &[]),
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Named(String),
    Inline { dim: usize, matrix: IntMatrix },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gram {
    Standard,
    Matrix(RatMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Presentation { dim: usize, matrix: IntMatrix },
    Form { carrier: Carrier, epsilon: i8, gram: Gram },
    /// Generators are the rows of `m` and `f`.
    Formation { form: String, m: IntMatrix, f: IntMatrix, certificate: Option<(String, String)> },
    Quadratic { orders: Vec<u64>, q: Vec<Mod1>, b: Option<Vec<Vec<Mod1>>> },
    Majorana { modes: usize, generators: Vec<Vec<u8>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub name: String,
    pub line: usize,
    pub body: Body,
}

impl Section {
    pub fn kind(&self) -> Kind {
        match self.body {
            Body::Presentation { .. } => Kind::Presentation,
            Body::Form { .. } => Kind::Form,
            Body::Formation { .. } => Kind::Formation,
            Body::Quadratic { .. } => Kind::Quadratic,
            Body::Majorana { .. } => Kind::Majorana,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeDocument {
    pub metadata: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

/// A `key = value` pair with the source position of every value character.
#[derive(Clone, Debug)]
struct Field {
    key: String,
    value: String,
    line: usize,
    column: usize,
    positions: Vec<(usize, usize)>,
}

impl Field {
    fn error(&self, offset_col: usize, message: impl Into<String>) -> DocError {
        let idx = offset_col.saturating_sub(1).min(self.positions.len().saturating_sub(1));
        let (l, c) = self.positions.get(idx).copied().unwrap_or((self.line, self.column));
        at(l, c, message)
    }

    fn start_error(&self, message: impl Into<String>) -> DocError {
        let (l, c) = self.positions.first().copied().unwrap_or((self.line, self.column));
        at(l, c, message)
    }
}

#[derive(Clone, Debug)]
struct RawSection {
    kind: Kind,
    name: String,
    line: usize,
    fields: Vec<Field>,
}

impl RawSection {
    fn get(&self, key: &str) -> Option<&Field> {
        self.fields.iter().find(|f| f.key == key)
    }

    fn require(&self, key: &str) -> Result<&Field, DocError> {
        self.get(key).ok_or_else(|| at(self.line, 1, format!("{} {} is missing `{key}`", self.kind, self.name)))
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
}

fn depth_change(s: &str) -> i64 {
    s.chars().map(|c| if c == '[' { 1 } else if c == ']' { -1 } else { 0 }).sum()
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based, in characters) of the first non-space character at or after byte `from`.
fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn lex(text: &str) -> Result<(Vec<Field>, Vec<RawSection>), DocError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut metadata = Vec::new();
    let mut sections: Vec<RawSection> = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let lineno = i + 1;
        let line = strip_comment(lines[i]);
        let trimmed = line.trim();
        i += 1;
        if trimmed.is_empty() {
            continue;
        }
        let indent = line.len() - line.trim_start().len();
        if trimmed.starts_with('[') && !trimmed.contains('=') {
            if !trimmed.ends_with(']') {
                return Err(at(lineno, indent + 1, "section header must end with `]`"));
            }
            let inner: Vec<&str> = trimmed[1..trimmed.len() - 1].split_whitespace().collect();
            let [kind, name] = inner[..] else {
                return Err(at(lineno, indent + 1, "section header is `[kind name]`"));
            };
            let kind = Kind::parse(kind).ok_or_else(|| at(lineno, indent + 2, format!("unknown section kind `{kind}`")))?;
            if !is_ident(name) {
                return Err(at(lineno, indent + 1, format!("invalid section name `{name}`")));
            }
            if sections.iter().any(|s| s.name == name) {
                return Err(at(lineno, indent + 1, format!("duplicate section name `{name}`")));
            }
            sections.push(RawSection { kind, name: name.to_string(), line: lineno, fields: Vec::new() });
            continue;
        }
        let Some(eq) = line.find('=') else {
            return Err(at(lineno, indent + 1, "expected `key = value` or a section header"));
        };
        let key = line[..eq].trim();
        if !is_ident(key) {
            return Err(at(lineno, indent + 1, format!("invalid key `{key}`")));
        }
        let rest = &line[eq + 1..];
        let lead = rest.len() - rest.trim_start().len();
        let value_byte = eq + 1 + lead;
        let mut value = String::new();
        let mut positions = Vec::new();
        let push = |text: &str, lineno: usize, byte: usize, value: &mut String, positions: &mut Vec<(usize, usize)>| {
            let base = char_column(lines[lineno - 1], byte);
            for (k, c) in text.chars().enumerate() {
                value.push(c);
                positions.push((lineno, base + k));
            }
        };
        let first = rest.trim();
        push(first, lineno, value_byte, &mut value, &mut positions);
        let mut depth = depth_change(first);
        while depth > 0 {
            if i >= lines.len() {
                return Err(at(lineno, char_column(lines[lineno - 1], value_byte), "unbalanced `[` in value"));
            }
            let cont = strip_comment(lines[i]);
            let t = cont.trim();
            let byte = cont.len() - cont.trim_start().len();
            if !t.is_empty() {
                value.push(' ');
                positions.push((i + 1, char_column(lines[i], byte)));
                push(t, i + 1, byte, &mut value, &mut positions);
                depth += depth_change(t);
            }
            i += 1;
        }
        if depth < 0 {
            return Err(at(lineno, char_column(lines[lineno - 1], value_byte), "unbalanced `]` in value"));
        }
        if value.is_empty() {
            return Err(at(lineno, char_column(lines[lineno - 1], value_byte), format!("`{key}` has an empty value")));
        }
        let field = Field {
            key: key.to_string(),
            value,
            line: lineno,
            column: indent + 1,
            positions,
        };
        let bucket = match sections.last_mut() {
            Some(s) => &mut s.fields,
            None => &mut metadata,
        };
        if bucket.iter().any(|f: &Field| f.key == field.key) {
            return Err(at(lineno, indent + 1, format!("duplicate key `{key}`")));
        }
        bucket.push(field);
    }
    Ok((metadata, sections))
}

fn core_error(field: &Field, e: invcode_core::Error) -> DocError {
    match e {
        invcode_core::Error::Parse { line, column, message } if line <= 1 => field.error(column, message),
        other => field.start_error(other.to_string()),
    }
}

/// Top-level comma-separated items of `[a, b, ...]`.
fn list_items(field: &Field, text: &str) -> Result<Vec<String>, DocError> {
    let t = text.trim();
    if !t.starts_with('[') || !t.ends_with(']') {
        return Err(field.start_error("expected a bracketed list"));
    }
    let inner = &t[1..t.len() - 1];
    if inner.trim().is_empty() {
        return Ok(vec![]);
    }
    let mut items = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for c in inner.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    items.push(cur.trim().to_string());
    if items.iter().any(String::is_empty) {
        return Err(field.start_error("empty list item"));
    }
    Ok(items)
}

fn parse_ratio(field: &Field, s: &str) -> Result<Mod1, DocError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: i64 = num.parse().map_err(|_| field.start_error(format!("invalid rational `{s}`")))?;
    let den: i64 = den.parse().map_err(|_| field.start_error(format!("invalid rational `{s}`")))?;
    if den <= 0 {
        return Err(field.start_error(format!("invalid denominator in `{s}`")));
    }
    Ok(Mod1::from_ratio(num, den))
}

fn parse_usize(field: &Field) -> Result<usize, DocError> {
    field.value.trim().parse().map_err(|_| field.start_error(format!("`{}` must be a non-negative integer", field.key)))
}

fn parse_name(field: &Field) -> Result<String, DocError> {
    let v = field.value.trim();
    if !is_ident(v) {
        return Err(field.start_error(format!("`{}` must name a section", field.key)));
    }
    Ok(v.to_string())
}

/// Parses a matrix whose rows are generators; `[]` means no generators.
fn parse_rows(field: &Field, dim: usize) -> Result<IntMatrix, DocError> {
    parse_int_matrix(&field.value, dim).map_err(|e| core_error(field, e))
}

struct Resolver<'a> {
    sections: &'a [RawSection],
}

impl Resolver<'_> {
    fn find(&self, name: &str, kind: Kind, from: &Field) -> Result<&RawSection, DocError> {
        self.sections
            .iter()
            .find(|s| s.name == name && s.kind == kind)
            .ok_or_else(|| from.start_error(format!("no {kind} section named `{name}`")))
    }

    fn dim(&self, s: &RawSection, depth: usize) -> Result<usize, DocError> {
        if depth > 3 {
            return Err(at(s.line, 1, "circular section references"));
        }
        match s.kind {
            Kind::Presentation => parse_usize(s.require("dimension")?),
            Kind::Form => match (s.get("presentation"), s.get("dimension")) {
                (Some(p), None) => self.dim(self.find(&parse_name(p)?, Kind::Presentation, p)?, depth + 1),
                (None, Some(d)) => parse_usize(d),
                _ => Err(at(s.line, 1, format!("form {} needs exactly one of `presentation` or `dimension`", s.name))),
            },
            Kind::Formation => {
                let f = s.require("form")?;
                self.dim(self.find(&parse_name(f)?, Kind::Form, f)?, depth + 1)
            }
            Kind::Quadratic | Kind::Majorana => Ok(0),
        }
    }

    fn body(&self, s: &RawSection) -> Result<Body, DocError> {
        let (required, optional) = s.kind.keys();
        for f in &s.fields {
            if !required.contains(&f.key.as_str()) && !optional.contains(&f.key.as_str()) {
                return Err(at(f.line, f.column, format!("unknown key `{}` in {} section", f.key, s.kind)));
            }
        }
        for key in required {
            s.require(key)?;
        }
        let dim = self.dim(s, 0)?;
        Ok(match s.kind {
            Kind::Presentation => Body::Presentation { dim, matrix: parse_rows(s.require("matrix")?, dim)? },
            Kind::Form => {
                let carrier = match s.get("presentation") {
                    Some(p) => {
                        if s.get("matrix").is_some() {
                            return Err(at(s.line, 1, "a form names a presentation or gives `dimension` and `matrix`"));
                        }
                        let name = parse_name(p)?;
                        self.find(&name, Kind::Presentation, p)?;
                        Carrier::Named(name)
                    }
                    None => Carrier::Inline { dim, matrix: parse_rows(s.require("matrix")?, dim)? },
                };
                let e = s.require("epsilon")?;
                let epsilon = match e.value.trim() {
                    "-1" => -1,
                    "1" | "+1" => 1,
                    _ => return Err(e.start_error("`epsilon` is 1 or -1")),
                };
                let g = s.require("gram")?;
                let gram = if g.value.trim() == "standard" {
                    Gram::Standard
                } else {
                    Gram::Matrix(parse_rat_matrix(&g.value, dim).map_err(|err| core_error(g, err))?)
                };
                Body::Form { carrier, epsilon, gram }
            }
            Kind::Formation => {
                let certificate = match (s.get("f_submodule"), s.get("f_quotient")) {
                    (None, None) => None,
                    (Some(a), Some(b)) => {
                        let (a_name, b_name) = (parse_name(a)?, parse_name(b)?);
                        self.find(&a_name, Kind::Presentation, a)?;
                        self.find(&b_name, Kind::Presentation, b)?;
                        Some((a_name, b_name))
                    }
                    _ => return Err(at(s.line, 1, "`f_submodule` and `f_quotient` come together")),
                };
                Body::Formation {
                    form: parse_name(s.require("form")?)?,
                    m: parse_rows(s.require("m_generators")?, dim)?,
                    f: parse_rows(s.require("f_generators")?, dim)?,
                    certificate,
                }
            }
            Kind::Quadratic => {
                let of = s.require("orders")?;
                let orders = list_items(of, &of.value)?
                    .iter()
                    .map(|t| t.parse::<u64>().map_err(|_| of.start_error(format!("invalid order `{t}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                let qf = s.require("q")?;
                let q = list_items(qf, &qf.value)?.iter().map(|t| parse_ratio(qf, t)).collect::<Result<Vec<_>, _>>()?;
                let b = match s.get("b") {
                    None => None,
                    Some(bf) => Some(
                        list_items(bf, &bf.value)?
                            .iter()
                            .map(|row| list_items(bf, row)?.iter().map(|t| parse_ratio(bf, t)).collect())
                            .collect::<Result<Vec<Vec<Mod1>>, _>>()?,
                    ),
                };
                Body::Quadratic { orders, q, b }
            }
            Kind::Majorana => {
                let modes = parse_usize(s.require("modes")?)?;
                let gf = s.require("generators")?;
                let generators = list_items(gf, &gf.value)?
                    .iter()
                    .map(|row| {
                        let bits = list_items(gf, row)?
                            .iter()
                            .map(|t| match t.as_str() {
                                "0" => Ok(0u8),
                                "1" => Ok(1u8),
                                _ => Err(gf.start_error(format!("Majorana exponents are 0 or 1, found `{t}`"))),
                            })
                            .collect::<Result<Vec<u8>, _>>()?;
                        if bits.len() != 2 * modes {
                            return Err(gf.start_error(format!("generator has {} entries, expected {}", bits.len(), 2 * modes)));
                        }
                        Ok(bits)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Body::Majorana { modes, generators }
            }
        })
    }
}

pub fn parse_document(text: &str) -> Result<CodeDocument, DocError> {
    let (meta, raw) = lex(text)?;
    if raw.is_empty() {
        return Err(at(1, 1, "document has no sections"));
    }
    let resolver = Resolver { sections: &raw };
    let sections = raw
        .iter()
        .map(|s| Ok(Section { name: s.name.clone(), line: s.line, body: resolver.body(s)? }))
        .collect::<Result<Vec<_>, DocError>>()?;
    let metadata = meta.into_iter().map(|f| (f.key, f.value)).collect();
    Ok(CodeDocument { metadata, sections })
}

fn ratio_list(v: &[Mod1]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

impl fmt::Display for CodeDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.metadata {
            writeln!(f, "{k} = {v}")?;
        }
        for (i, s) in self.sections.iter().enumerate() {
            if i > 0 || !self.metadata.is_empty() {
                writeln!(f)?;
            }
            writeln!(f, "[{} {}]", s.kind(), s.name)?;
            match &s.body {
                Body::Presentation { dim, matrix } => {
                    writeln!(f, "dimension = {dim}")?;
                    writeln!(f, "matrix = {matrix}")?;
                }
                Body::Form { carrier, epsilon, gram } => {
                    match carrier {
                        Carrier::Named(n) => writeln!(f, "presentation = {n}")?,
                        Carrier::Inline { dim, matrix } => {
                            writeln!(f, "dimension = {dim}")?;
                            writeln!(f, "matrix = {matrix}")?;
                        }
                    }
                    writeln!(f, "epsilon = {epsilon}")?;
                    match gram {
                        Gram::Standard => writeln!(f, "gram = standard")?,
                        Gram::Matrix(m) => writeln!(f, "gram = {m}")?,
                    }
                }
                Body::Formation { form, m, f: fg, certificate } => {
                    writeln!(f, "form = {form}")?;
                    writeln!(f, "m_generators = {m}")?;
                    writeln!(f, "f_generators = {fg}")?;
                    if let Some((a, b)) = certificate {
                        writeln!(f, "f_submodule = {a}")?;
                        writeln!(f, "f_quotient = {b}")?;
                    }
                }
                Body::Quadratic { orders, q, b } => {
                    let o: Vec<String> = orders.iter().map(ToString::to_string).collect();
                    writeln!(f, "orders = [{}]", o.join(", "))?;
                    writeln!(f, "q = {}", ratio_list(q))?;
                    if let Some(b) = b {
                        let rows: Vec<String> = b.iter().map(|r| ratio_list(r)).collect();
                        writeln!(f, "b = [{}]", rows.join(", "))?;
                    }
                }
                Body::Majorana { modes, generators } => {
                    writeln!(f, "modes = {modes}")?;
                    let rows: Vec<String> = generators
                        .iter()
                        .map(|g| format!("[{}]", g.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                        .collect();
                    writeln!(f, "generators = [{}]", rows.join(", "))?;
                }
            }
        }
        Ok(())
    }
}

/// Semantic errors raised while building core objects from a document.
#[derive(Debug)]
pub struct BuildError {
    pub section: String,
    pub error: invcode_core::Error,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.section, self.error)
    }
}

impl std::error::Error for BuildError {}

fn rows_of(m: &IntMatrix) -> Vec<Vec<invcode_core::ring::IntPoly>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

impl CodeDocument {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// The named section, or the first one of any of the given kinds.
    pub fn select(&self, name: Option<&str>, kinds: &[Kind]) -> Option<&Section> {
        match name {
            Some(n) => self.section(n).filter(|s| kinds.contains(&s.kind())),
            None => kinds.iter().find_map(|k| self.sections.iter().find(|s| s.kind() == *k)),
        }
    }

    fn wrap<T>(name: &str, r: invcode_core::Result<T>) -> Result<T, BuildError> {
        r.map_err(|error| BuildError { section: name.to_string(), error })
    }

    pub fn presentation(&self, name: &str) -> Result<Presentation, BuildError> {
        match self.section(name).map(|s| &s.body) {
            Some(Body::Presentation { matrix, .. }) => Self::wrap(name, Presentation::new(matrix.clone())),
            Some(Body::Form { .. }) => Ok(self.form(name)?.carrier().as_ref().clone()),
            Some(Body::Formation { form, .. }) => self.presentation(form),
            _ => Self::wrap(name, Err(invcode_core::Error::Unsupported(format!("`{name}` has no presentation")))),
        }
    }

    pub fn form(&self, name: &str) -> Result<LinkingForm, BuildError> {
        let Some(Body::Form { carrier, epsilon, gram }) = self.section(name).map(|s| &s.body) else {
            return Self::wrap(name, Err(invcode_core::Error::Unsupported(format!("`{name}` is not a form"))));
        };
        let pres = match carrier {
            Carrier::Named(p) => self.presentation(p)?,
            Carrier::Inline { matrix, .. } => Self::wrap(name, Presentation::new(matrix.clone()))?,
        };
        match gram {
            Gram::Standard => Self::wrap(name, LinkingForm::standard(&pres, *epsilon)),
            Gram::Matrix(g) => Self::wrap(name, LinkingForm::new(Arc::new(pres), g.clone(), *epsilon)),
        }
    }

    pub fn formation(&self, name: &str) -> Result<Formation, BuildError> {
        let Some(Body::Formation { form, m, f, certificate }) = self.section(name).map(|s| &s.body) else {
            return Self::wrap(name, Err(invcode_core::Error::Unsupported(format!("`{name}` is not a formation"))));
        };
        let lf = self.form(form)?;
        let (n, dim) = (lf.n(), lf.dim());
        let ms = Self::wrap(name, Submodule::new(n, dim, rows_of(m)))?;
        let mut fs = Self::wrap(name, Submodule::new(n, dim, rows_of(f)))?;
        if let Some((a, b)) = certificate {
            fs = fs.with_certificate(SubmoduleCertificate { submodule: self.presentation(a)?, quotient: self.presentation(b)? });
        }
        Self::wrap(name, Formation::new(lf, ms, fs))
    }

    pub fn quadratic(&self, name: &str) -> Result<FiniteQuadraticForm, BuildError> {
        let Some(Body::Quadratic { orders, q, b }) = self.section(name).map(|s| &s.body) else {
            return Self::wrap(name, Err(invcode_core::Error::Unsupported(format!("`{name}` is not a quadratic form"))));
        };
        let b = b.clone().unwrap_or_else(|| vec![vec![Mod1::from_ratio(0, 1); orders.len()]; orders.len()]);
        Self::wrap(name, FiniteQuadraticForm::new(orders.clone(), q.clone(), b))
    }

    pub fn majorana(&self, name: &str) -> Option<&[Vec<u8>]> {
        match self.section(name).map(|s| &s.body) {
            Some(Body::Majorana { generators, .. }) => Some(generators),
            _ => None,
        }
    }
}
