//! Text file formats: truth tables, generalized and vectorial tables, partitions and
//! spectrum exports.

use std::fmt::{self, Write as _};
use std::io;

use negabent_core::boolfn::Flavor;
use negabent_core::vect::VectFn;
use negabent_core::{BoolFn, CycInt, Field, FnError, GenFn, GenSpectrum, Partition, WalshSpectrum};
use serde::{Deserialize, Serialize};

/// Digits (or values) per body line when writing.
const LINE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    /// Malformed header or body.
    Syntax(String),
    /// The flavor does not fit the declared `n`, or names an unusable field.
    Flavor(String),
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormatError::Syntax(m) => write!(f, "parse error: {m}"),
            FormatError::Flavor(m) => write!(f, "flavor mismatch: {m}"),
        }
    }
}

impl std::error::Error for FormatError {}

fn syntax(msg: impl Into<String>) -> FormatError {
    FormatError::Syntax(msg.into())
}

/// Any of the three function file kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctionFile {
    Bool(BoolFn),
    Gen(GenFn),
    Vect(VectFn),
}

impl FunctionFile {
    pub fn kind(&self) -> &'static str {
        match self {
            FunctionFile::Bool(_) => "boolfn",
            FunctionFile::Gen(_) => "genfn",
            FunctionFile::Vect(_) => "vectfn",
        }
    }

    pub fn n(&self) -> u32 {
        match self {
            FunctionFile::Bool(f) => f.n(),
            FunctionFile::Gen(f) => f.n(),
            FunctionFile::Vect(f) => f.n(),
        }
    }

    /// `k` for generalized and vectorial tables, 1 for Boolean ones.
    pub fn k(&self) -> u32 {
        match self {
            FunctionFile::Bool(_) => 1,
            FunctionFile::Gen(f) => f.k(),
            FunctionFile::Vect(f) => f.k(),
        }
    }

    pub fn flavor(&self) -> &Flavor {
        match self {
            FunctionFile::Bool(f) => f.flavor(),
            FunctionFile::Gen(f) => f.flavor(),
            FunctionFile::Vect(f) => f.flavor(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| syntax("empty file"))?;
        let body: String = lines
            .flat_map(|l| l.chars().filter(|c| !c.is_whitespace()))
            .collect();
        let mut words = header.split_whitespace();
        let tag = words.next().ok_or_else(|| syntax("missing tag"))?;
        let (mut n, mut k, mut flavor) = (None, None, None);
        for word in words {
            let (key, value) = word
                .split_once('=')
                .ok_or_else(|| syntax(format!("bad header field {word:?}")))?;
            match key {
                "n" => n = Some(value.parse::<u32>().map_err(|_| syntax("bad n"))?),
                "k" => k = Some(value.parse::<u32>().map_err(|_| syntax("bad k"))?),
                "flavor" => flavor = Some(value),
                _ => return Err(syntax(format!("unknown header field {key:?}"))),
            }
        }
        let n = n.ok_or_else(|| syntax("missing n"))?;
        if n > 24 {
            return Err(syntax(format!("n = {n} is too large")));
        }
        let flavor = parse_flavor(flavor.ok_or_else(|| syntax("missing flavor"))?)?;
        if !flavor.accepts(n) {
            return Err(FormatError::Flavor(format!(
                "{} does not fit n = {n}",
                flavor.tag()
            )));
        }
        match tag {
            "boolfn" => {
                if k.is_some() {
                    return Err(syntax("boolfn header takes no k"));
                }
                let table = unpack_bits(&body, n)?;
                Ok(FunctionFile::Bool(
                    BoolFn::new(n, table, flavor).map_err(|e| syntax(e.to_string()))?,
                ))
            }
            "genfn" | "vectfn" => {
                let k = k.ok_or_else(|| syntax("missing k"))?;
                if k == 0 || k > 16 {
                    return Err(syntax(format!("k = {k} out of range")));
                }
                let values = unpack_digits(&body, n, k)?;
                if tag == "genfn" {
                    Ok(FunctionFile::Gen(
                        GenFn::new(n, k, values, flavor).map_err(|e| syntax(e.to_string()))?,
                    ))
                } else {
                    let f = VectFn::new(n, k, values, flavor).map_err(|e| match e {
                        FnError::BadTable => syntax(e.to_string()),
                        other => FormatError::Flavor(other.to_string()),
                    })?;
                    Ok(FunctionFile::Vect(f))
                }
            }
            other => Err(syntax(format!("unknown tag {other:?}"))),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            FunctionFile::Bool(f) => {
                let mut out = format!("boolfn n={} flavor={}\n", f.n(), f.flavor().tag());
                push_lines(&mut out, &pack_bits(f.table()), LINE);
                out
            }
            FunctionFile::Gen(f) => digits_text("genfn", f.n(), f.k(), f.flavor(), f.values()),
            FunctionFile::Vect(f) => digits_text("vectfn", f.n(), f.k(), f.flavor(), f.table()),
        }
    }
}

/// `mv`, `uv:0x<poly>` or `bv:0x<poly>`; the polynomial fixes the degree.
pub fn parse_flavor(text: &str) -> Result<Flavor, FormatError> {
    if text == "mv" {
        return Ok(Flavor::Multivariate);
    }
    let (kind, poly) = text
        .split_once(':')
        .ok_or_else(|| syntax(format!("bad flavor {text:?}")))?;
    let digits = poly.strip_prefix("0x").unwrap_or(poly);
    let poly =
        u32::from_str_radix(digits, 16).map_err(|_| syntax(format!("bad polynomial {poly:?}")))?;
    if poly < 2 {
        return Err(FormatError::Flavor(format!(
            "polynomial {poly:#x} has degree 0"
        )));
    }
    let field = Field::with_poly(31 - poly.leading_zeros(), poly)
        .map_err(|e| FormatError::Flavor(e.to_string()))?;
    match kind {
        "uv" => Ok(Flavor::Univariate(field)),
        "bv" => Ok(Flavor::Bivariate(field)),
        _ => Err(syntax(format!("bad flavor kind {kind:?}"))),
    }
}

fn push_lines(out: &mut String, body: &str, width: usize) {
    for chunk in body.as_bytes().chunks(width) {
        out.push_str(std::str::from_utf8(chunk).expect("hex digits are ascii"));
        out.push('\n');
    }
}

/// Digit `i` holds `f(4i), ..., f(4i + 3)` from the low bit up.
fn pack_bits(table: &[u8]) -> String {
    table
        .chunks(4)
        .map(|c| {
            let d = c
                .iter()
                .enumerate()
                .fold(0u32, |acc, (j, &b)| acc | u32::from(b) << j);
            char::from_digit(d, 16).expect("nibble")
        })
        .collect()
}

fn unpack_bits(body: &str, n: u32) -> Result<Vec<u8>, FormatError> {
    let len = 1usize << n;
    let want = len.div_ceil(4);
    if body.len() != want {
        return Err(syntax(format!(
            "expected {want} hex digits, found {}",
            body.len()
        )));
    }
    let mut table = Vec::with_capacity(want * 4);
    for ch in body.chars() {
        let d = ch
            .to_digit(16)
            .ok_or_else(|| syntax(format!("bad hex digit {ch:?}")))?;
        table.extend((0..4).map(|j| (d >> j & 1) as u8));
    }
    if table[len..].iter().any(|&b| b != 0) {
        return Err(syntax("padding bits must be zero"));
    }
    table.truncate(len);
    Ok(table)
}

fn digit_width(k: u32) -> usize {
    k.div_ceil(4) as usize
}

fn digits_text(tag: &str, n: u32, k: u32, flavor: &Flavor, values: &[u32]) -> String {
    let w = digit_width(k);
    let mut out = format!("{tag} n={n} k={k} flavor={}\n", flavor.tag());
    let mut body = String::with_capacity(values.len() * w);
    for v in values {
        write!(body, "{v:0w$x}").expect("writing to a string");
    }
    push_lines(&mut out, &body, LINE * w);
    out
}

fn unpack_digits(body: &str, n: u32, k: u32) -> Result<Vec<u32>, FormatError> {
    let w = digit_width(k);
    let want = (1usize << n) * w;
    if body.len() != want || !body.is_ascii() {
        return Err(syntax(format!(
            "expected {want} hex digits, found {}",
            body.len()
        )));
    }
    body.as_bytes()
        .chunks(w)
        .map(|c| {
            let s = std::str::from_utf8(c).expect("ascii");
            let v = u32::from_str_radix(s, 16).map_err(|_| syntax(format!("bad value {s:?}")))?;
            if v >> k != 0 {
                return Err(syntax(format!("value {v} exceeds 2^{k} - 1")));
            }
            Ok(v)
        })
        .collect()
}

/// Partition file body.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionFile {
    pub n: u32,
    #[serde(rename = "U")]
    pub u: Option<Vec<u32>>,
    pub parts: Vec<Vec<u32>>,
}

impl From<&Partition> for PartitionFile {
    fn from(p: &Partition) -> Self {
        PartitionFile {
            n: p.n(),
            u: p.u().map(<[u32]>::to_vec),
            parts: p.parts().to_vec(),
        }
    }
}

impl PartitionFile {
    pub fn parse(text: &str) -> Result<Partition, FormatError> {
        let file: PartitionFile = serde_json::from_str(text).map_err(|e| syntax(e.to_string()))?;
        if file.n > 24 {
            return Err(syntax(format!("n = {} is too large", file.n)));
        }
        Partition::new(file.n, file.u, file.parts).map_err(|e| syntax(e.to_string()))
    }

    pub fn to_text(p: &Partition) -> String {
        serde_json::to_string(&PartitionFile::from(p)).expect("plain data serializes")
    }
}

/// CSV `b,value`.
pub fn write_walsh_csv(spectrum: &WalshSpectrum, out: impl io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["b", "value"])?;
    for (b, v) in spectrum.values().iter().enumerate() {
        w.write_record([b.to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// CSV `c,u,coeffs` over every nonzero `c`, coefficients in `K=<int>;[...]` form.
pub fn write_gen_csv(spectrum: &GenSpectrum, out: impl io::Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["c", "u", "coeffs"])?;
    for c in 1..1u32 << spectrum.k() {
        for (u, v) in spectrum.row(c).iter().enumerate() {
            w.write_record([c.to_string(), u.to_string(), v.to_text()])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Rows of a `c,u,coeffs` export.
pub fn read_gen_csv(input: impl io::Read) -> Result<Vec<(u32, u32, CycInt)>, FormatError> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| syntax(e.to_string()))?;
        if rec.len() != 3 {
            return Err(syntax("expected three columns"));
        }
        let c = rec[0].parse().map_err(|_| syntax("bad c"))?;
        let u = rec[1].parse().map_err(|_| syntax("bad u"))?;
        let v = rec[2].parse().map_err(|_| syntax("bad coefficients"))?;
        rows.push((c, u, v));
    }
    Ok(rows)
}
