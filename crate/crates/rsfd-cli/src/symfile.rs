//! On-disk formats: symbol files and error-pattern files.
//!
//! A symbol file is a one-line ASCII header followed by raw little-endian
//! symbols:
//!
//! ```text
//! RSFD1 m=<m> mu=<mu> len=<count>\n
//! <len symbols: one byte each for m <= 8, two bytes LE for 8 < m <= 16>
//! ```
//!
//! A pattern file is plain text, one `<index> <value-hex>` pair per line;
//! blank lines and `#` comments are ignored.

use rsfd_core::{CodeParams, ErrorPattern, Gf};

pub const MAGIC: &str = "RSFD1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolFile {
    pub m: u32,
    pub mu: u32,
    pub symbols: Vec<Gf>,
}

impl SymbolFile {
    pub fn new(params: &CodeParams, symbols: Vec<Gf>) -> SymbolFile {
        SymbolFile { m: params.m, mu: params.mu, symbols }
    }

    pub fn wide(&self) -> bool {
        self.m > 8
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + self.symbols.len() * 2);
        out.extend_from_slice(
            format!("{MAGIC} m={} mu={} len={}\n", self.m, self.mu, self.symbols.len()).as_bytes(),
        );
        for s in &self.symbols {
            if self.wide() {
                out.extend_from_slice(&s.0.to_le_bytes());
            } else {
                out.push(s.0 as u8);
            }
        }
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<SymbolFile, String> {
        let nl = bytes
            .iter()
            .position(|&b| b == b'\n')
            .ok_or("missing header line")?;
        let header = std::str::from_utf8(&bytes[..nl]).map_err(|_| "header is not ASCII")?;
        let mut parts = header.split_whitespace();
        if parts.next() != Some(MAGIC) {
            return Err(format!("bad magic, expected {MAGIC}"));
        }
        let mut m = None;
        let mut mu = None;
        let mut len = None;
        for part in parts {
            let (key, value) = part.split_once('=').ok_or_else(|| format!("bad field {part:?}"))?;
            let value: usize = value.parse().map_err(|_| format!("bad value in {part:?}"))?;
            match key {
                "m" => m = Some(value as u32),
                "mu" => mu = Some(value as u32),
                "len" => len = Some(value),
                _ => return Err(format!("unknown header field {key:?}")),
            }
        }
        let (m, mu, len) = match (m, mu, len) {
            (Some(m), Some(mu), Some(len)) => (m, mu, len),
            _ => return Err("header must carry m, mu, and len".into()),
        };
        if !(2..=16).contains(&m) || mu >= m {
            return Err("header parameters out of range".into());
        }
        let body = &bytes[nl + 1..];
        let width = if m > 8 { 2 } else { 1 };
        if body.len() != len * width {
            return Err(format!(
                "body holds {} bytes but the header promises {} symbols of {} byte(s)",
                body.len(),
                len,
                width
            ));
        }
        let limit = 1u32 << m;
        let mut symbols = Vec::with_capacity(len);
        for chunk in body.chunks(width) {
            let v = if width == 2 {
                u16::from_le_bytes([chunk[0], chunk[1]])
            } else {
                chunk[0] as u16
            };
            if (v as u32) >= limit {
                return Err(format!("symbol {v:#x} does not fit in GF(2^{m})"));
            }
            symbols.push(Gf(v));
        }
        Ok(SymbolFile { m, mu, symbols })
    }
}

/// Raw data symbols without a header, for encoder input.
pub fn data_from_bytes(m: u32, bytes: &[u8]) -> Result<Vec<Gf>, String> {
    let width = if m > 8 { 2usize } else { 1 };
    if bytes.len() % width != 0 {
        return Err(format!("input length {} is not a multiple of {width}", bytes.len()));
    }
    let limit = 1u32 << m;
    let mut out = Vec::with_capacity(bytes.len() / width);
    for chunk in bytes.chunks(width) {
        let v = if width == 2 {
            u16::from_le_bytes([chunk[0], chunk[1]])
        } else {
            chunk[0] as u16
        };
        if (v as u32) >= limit {
            return Err(format!("symbol {v:#x} does not fit in GF(2^{m})"));
        }
        out.push(Gf(v));
    }
    Ok(out)
}

pub fn parse_pattern(text: &str, params: &CodeParams) -> Result<ErrorPattern, String> {
    let mut entries = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let idx: usize = parts
            .next()
            .ok_or_else(|| format!("line {}: missing index", lineno + 1))?
            .parse()
            .map_err(|_| format!("line {}: bad index", lineno + 1))?;
        let val = parts
            .next()
            .ok_or_else(|| format!("line {}: missing value", lineno + 1))?;
        let val = u16::from_str_radix(val.trim_start_matches("0x"), 16)
            .map_err(|_| format!("line {}: bad hex value", lineno + 1))?;
        if parts.next().is_some() {
            return Err(format!("line {}: trailing garbage", lineno + 1));
        }
        entries.push((idx, Gf(val)));
    }
    ErrorPattern::new(entries, params.n).map_err(|e| e.to_string())
}

pub fn render_pattern(pattern: &ErrorPattern) -> String {
    let mut out = String::new();
    for &(idx, val) in &pattern.entries {
        out.push_str(&format!("{idx} {:x}\n", val.0));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_file_roundtrip() {
        let params = CodeParams::rs256_224();
        let file = SymbolFile::new(&params, (0..256u16).map(Gf).collect());
        let bytes = file.to_bytes();
        assert!(bytes.starts_with(b"RSFD1 m=8 mu=5 len=256\n"));
        assert_eq!(SymbolFile::parse(&bytes).unwrap(), file);
    }

    #[test]
    fn wide_symbols_use_two_bytes() {
        let params = CodeParams::new(9, 5).unwrap();
        let file = SymbolFile::new(&params, vec![Gf(0x1ff), Gf(3)]);
        let bytes = file.to_bytes();
        let parsed = SymbolFile::parse(&bytes).unwrap();
        assert_eq!(parsed.symbols, vec![Gf(0x1ff), Gf(3)]);
    }

    #[test]
    fn parse_rejects_bad_inputs() {
        assert!(SymbolFile::parse(b"nope\n").is_err());
        assert!(SymbolFile::parse(b"RSFD1 m=8 mu=5 len=3\nab").is_err());
        // symbol out of range for m=7
        let mut bytes = b"RSFD1 m=7 mu=5 len=1\n".to_vec();
        bytes.push(0x90);
        assert!(SymbolFile::parse(&bytes).is_err());
    }

    #[test]
    fn pattern_parsing() {
        let params = CodeParams::rs256_224();
        let pat = parse_pattern("# two errors\n40 a5\n50 0x3\n", &params).unwrap();
        assert_eq!(pat.entries, vec![(40, Gf(0xa5)), (50, Gf(3))]);
        assert!(parse_pattern("40 zz\n", &params).is_err());
        assert!(parse_pattern("40 a5 extra\n", &params).is_err());
        let rendered = render_pattern(&pat);
        assert_eq!(parse_pattern(&rendered, &params).unwrap(), pat);
    }
}
