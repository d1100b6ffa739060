//! Minimal FITS reader: primary HDU, two axes, BITPIX 8 or 16.
//!
//! Header cards are read at fixed 80-byte offsets within 2880-byte blocks;
//! the data unit starts at the first block boundary after the `END` card.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::image2d::{ImageBuffer, Peak};

pub const BLOCK: usize = 2880;
pub const CARD: usize = 80;

#[derive(Debug, Error, PartialEq)]
pub enum FitsError {
    #[error("SIMPLE card missing or not T")]
    MissingSimple,
    #[error("END card not found")]
    MissingEnd,
    #[error("required card {0} missing")]
    MissingCard(&'static str),
    #[error("card {keyword} has invalid value '{value}'")]
    InvalidCard { keyword: String, value: String },
    #[error("BITPIX = {0} is not supported (only 8 and 16)")]
    UnsupportedBitpix(i64),
    #[error("NAXIS = {0} is not supported (only 2)")]
    UnsupportedNaxis(i64),
    #[error("{keyword} = {value} is not a valid axis length")]
    BadAxis { keyword: &'static str, value: i64 },
    #[error("data unit truncated: expected {expected} bytes, found {available}")]
    TruncatedData { expected: usize, available: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitsHeader {
    pub bitpix: i64,
    pub naxis: i64,
    pub naxis1: usize,
    pub naxis2: usize,
    pub bscale: f64,
    pub bzero: f64,
}

impl FitsHeader {
    pub fn peak(&self) -> Peak {
        if self.bitpix == 8 {
            Peak::Eight
        } else {
            Peak::Sixteen
        }
    }

    fn bytes_per_sample(&self) -> usize {
        (self.bitpix / 8) as usize
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Value {
    Logical(bool),
    Number(f64),
    Text(String),
}

struct Card {
    keyword: String,
    value: Option<Value>,
    raw: String,
}

fn parse_card(card: &[u8]) -> Card {
    let keyword = String::from_utf8_lossy(&card[..8]).trim_end().to_string();
    let raw = String::from_utf8_lossy(&card[10..]).to_string();
    let value = if &card[8..10] == b"= " {
        parse_value(&raw)
    } else {
        None
    };
    Card {
        keyword,
        value,
        raw,
    }
}

fn parse_value(field: &str) -> Option<Value> {
    let trimmed = field.trim_start();
    if let Some(rest) = trimmed.strip_prefix('\'') {
        let mut text = String::new();
        let mut chars = rest.chars().peekable();
        while let Some(c) = chars.next() {
            if c == '\'' {
                if chars.peek() == Some(&'\'') {
                    chars.next();
                    text.push('\'');
                } else {
                    return Some(Value::Text(text.trim_end().to_string()));
                }
            } else {
                text.push(c);
            }
        }
        return None;
    }
    let token = trimmed.split('/').next().unwrap_or("").trim();
    match token {
        "T" => Some(Value::Logical(true)),
        "F" => Some(Value::Logical(false)),
        "" => None,
        t => t.replace(['D', 'd'], "E").parse().ok().map(Value::Number),
    }
}

fn integer(card: &Card) -> Result<i64, FitsError> {
    match card.value {
        Some(Value::Number(v)) if v.fract() == 0.0 && v.abs() < 9.0e15 => Ok(v as i64),
        _ => Err(invalid(card)),
    }
}

fn real(card: &Card) -> Result<f64, FitsError> {
    match card.value {
        Some(Value::Number(v)) => Ok(v),
        _ => Err(invalid(card)),
    }
}

fn invalid(card: &Card) -> FitsError {
    FitsError::InvalidCard {
        keyword: card.keyword.clone(),
        value: card.raw.trim().to_string(),
    }
}

/// Parses the primary header, returning it and the byte offset of the data unit.
pub fn parse_header(data: &[u8]) -> Result<(FitsHeader, usize), FitsError> {
    let mut cards = data.chunks_exact(CARD).map(parse_card);
    match cards.next() {
        Some(first) if first.keyword == "SIMPLE" && first.value == Some(Value::Logical(true)) => {}
        _ => return Err(FitsError::MissingSimple),
    }

    let (mut bitpix, mut naxis, mut naxis1, mut naxis2) = (None, None, None, None);
    let (mut bscale, mut bzero) = (1.0, 0.0);
    let mut end_index = None;
    for (i, card) in cards.enumerate() {
        match card.keyword.as_str() {
            "END" => {
                end_index = Some(i + 1);
                break;
            }
            "BITPIX" if bitpix.is_none() => bitpix = Some(integer(&card)?),
            "NAXIS" if naxis.is_none() => naxis = Some(integer(&card)?),
            "NAXIS1" if naxis1.is_none() => naxis1 = Some(integer(&card)?),
            "NAXIS2" if naxis2.is_none() => naxis2 = Some(integer(&card)?),
            "BSCALE" => bscale = real(&card)?,
            "BZERO" => bzero = real(&card)?,
            _ => {}
        }
    }
    let end_index = end_index.ok_or(FitsError::MissingEnd)?;

    let bitpix = bitpix.ok_or(FitsError::MissingCard("BITPIX"))?;
    if bitpix != 8 && bitpix != 16 {
        return Err(FitsError::UnsupportedBitpix(bitpix));
    }
    let naxis = naxis.ok_or(FitsError::MissingCard("NAXIS"))?;
    if naxis != 2 {
        return Err(FitsError::UnsupportedNaxis(naxis));
    }
    let axis = |v: Option<i64>, keyword: &'static str| -> Result<usize, FitsError> {
        let v = v.ok_or(FitsError::MissingCard(keyword))?;
        if v < 1 || v > u32::MAX as i64 {
            return Err(FitsError::BadAxis { keyword, value: v });
        }
        Ok(v as usize)
    };
    let header = FitsHeader {
        bitpix,
        naxis,
        naxis1: axis(naxis1, "NAXIS1")?,
        naxis2: axis(naxis2, "NAXIS2")?,
        bscale,
        bzero,
    };
    let header_bytes = (end_index + 1) * CARD;
    let data_offset = header_bytes.div_ceil(BLOCK) * BLOCK;
    Ok((header, data_offset))
}

/// Decodes a FITS image held in memory.
pub fn parse_fits(data: &[u8]) -> Result<ImageBuffer, FitsError> {
    let (header, offset) = parse_header(data)?;
    let expected = header
        .naxis1
        .checked_mul(header.naxis2)
        .and_then(|n| n.checked_mul(header.bytes_per_sample()))
        .ok_or(FitsError::TruncatedData {
            expected: usize::MAX,
            available: data.len().saturating_sub(offset),
        })?;
    let available = data.len().saturating_sub(offset);
    if available < expected {
        return Err(FitsError::TruncatedData {
            expected,
            available,
        });
    }
    let raw = &data[offset..offset + expected];
    let physical = |v: f64| header.bscale * v + header.bzero;
    let samples: Vec<f64> = match header.bitpix {
        8 => raw.iter().map(|&b| physical(b as f64)).collect(),
        _ => raw
            .chunks_exact(2)
            .map(|b| physical(i16::from_be_bytes([b[0], b[1]]) as f64))
            .collect(),
    };
    ImageBuffer::new(header.naxis1, header.naxis2, samples, header.peak()).map_err(|_| {
        FitsError::InvalidCard {
            keyword: "BSCALE".into(),
            value: format!("{} (non-finite samples)", header.bscale),
        }
    })
}

pub fn read_fits(path: impl AsRef<Path>) -> crate::Result<ImageBuffer> {
    Ok(parse_fits(&fs::read(path)?)?)
}

/// Builds a header block from `(keyword, value)` pairs, padded to 2880 bytes.
/// Used to assemble fixtures.
pub fn header_block(cards: &[(&str, &str)]) -> Vec<u8> {
    let mut out = Vec::new();
    for (key, value) in cards {
        let card = format!("{key:<8}= {value:>20}");
        out.extend_from_slice(format!("{card:<80}").as_bytes());
    }
    out.extend_from_slice(format!("{:<80}", "END").as_bytes());
    out.resize(out.len().div_ceil(BLOCK) * BLOCK, b' ');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(cards: &[(&str, &str)], data: &[u8]) -> Vec<u8> {
        let mut out = header_block(cards);
        out.extend_from_slice(data);
        out.resize(out.len().div_ceil(BLOCK) * BLOCK, 0);
        out
    }

    const BASE: [(&str, &str); 5] = [
        ("SIMPLE", "T"),
        ("BITPIX", "16"),
        ("NAXIS", "2"),
        ("NAXIS1", "2"),
        ("NAXIS2", "2"),
    ];

    #[test]
    fn minimal_16bit() {
        let img = parse_fits(&fixture(&BASE, &[0, 0, 0, 1, 0, 2, 0, 3])).unwrap();
        assert_eq!((img.width(), img.height()), (2, 2));
        assert_eq!(img.samples(), &[0.0, 1.0, 2.0, 3.0]);
        assert_eq!(img.peak(), Peak::Sixteen);
    }

    #[test]
    fn unsigned_convention() {
        let mut cards = BASE.to_vec();
        cards.push(("BZERO", "32768"));
        cards.push(("BSCALE", "1.0"));
        let raw = [0x80, 0x00, 0x7f, 0xff, 0xff, 0xff, 0x00, 0x00];
        let img = parse_fits(&fixture(&cards, &raw)).unwrap();
        assert_eq!(img.samples(), &[0.0, 65535.0, 32767.0, 32768.0]);
    }

    #[test]
    fn eight_bit_is_unsigned() {
        let mut cards = BASE.to_vec();
        cards[1] = ("BITPIX", "8");
        let img = parse_fits(&fixture(&cards, &[0, 1, 200, 255])).unwrap();
        assert_eq!(img.samples(), &[0.0, 1.0, 200.0, 255.0]);
        assert_eq!(img.peak(), Peak::Eight);
    }

    #[test]
    fn errors_name_the_card() {
        let mut cards = BASE.to_vec();
        cards[1] = ("BITPIX", "32");
        assert_eq!(
            parse_fits(&fixture(&cards, &[0; 16])),
            Err(FitsError::UnsupportedBitpix(32))
        );

        let mut cards = BASE.to_vec();
        cards[0] = ("SIMPLE", "F");
        assert_eq!(
            parse_fits(&fixture(&cards, &[])),
            Err(FitsError::MissingSimple)
        );

        let mut cards = BASE.to_vec();
        cards[2] = ("NAXIS", "3");
        assert_eq!(
            parse_fits(&fixture(&cards, &[])),
            Err(FitsError::UnsupportedNaxis(3))
        );

        let cards = &BASE[..4];
        assert_eq!(
            parse_fits(&fixture(cards, &[])),
            Err(FitsError::MissingCard("NAXIS2"))
        );

        let mut no_end = Vec::new();
        for (k, v) in BASE {
            no_end.extend_from_slice(format!("{:<80}", format!("{k:<8}= {v:>20}")).as_bytes());
        }
        no_end.resize(BLOCK, b' ');
        assert_eq!(parse_fits(&no_end), Err(FitsError::MissingEnd));

        let mut truncated = header_block(&BASE);
        truncated.extend_from_slice(&[0, 0, 0]);
        assert_eq!(
            parse_fits(&truncated),
            Err(FitsError::TruncatedData {
                expected: 8,
                available: 3
            })
        );
    }

    #[test]
    fn comments_and_strings() {
        let mut cards = BASE.to_vec();
        cards.push(("OBJECT", "'M45 O''Neil'"));
        cards.push(("BZERO", "3.2768D4 / unsigned"));
        let img = parse_fits(&fixture(&cards, &[0x80, 0, 0x80, 0, 0x80, 0, 0x80, 0])).unwrap();
        assert_eq!(img.samples(), &[0.0; 4]);
        assert_eq!(
            parse_value(" 'a''b '  / c"),
            Some(Value::Text("a'b".to_string()))
        );
    }

    #[test]
    fn header_spanning_blocks() {
        let mut cards = BASE.to_vec();
        let filler: Vec<String> = (0..40).map(|i| format!("HIST{i:04}")).collect();
        for k in &filler {
            cards.push((k.as_str(), "1"));
        }
        let bytes = fixture(&cards, &[0, 5, 0, 6, 0, 7, 0, 8]);
        let (_, offset) = parse_header(&bytes).unwrap();
        assert_eq!(offset, 2 * BLOCK);
        assert_eq!(parse_fits(&bytes).unwrap().samples(), &[5.0, 6.0, 7.0, 8.0]);
    }
}
