//! Binary pyramid container.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic      8 bytes   "MFPYRAMD"
//! version    u16       1
//! width      u32
//! height     u32
//! levels     u32
//! r          u32       1 (scalar) or 2 (matrix bank)
//! peak       u32       255 or 65535
//! name_len   u16
//! name       name_len bytes of UTF-8 filter name
//! plane      width*height f64, row-major
//! map_len    u32
//! map        map_len bytes of UTF-8 channel map (see ChannelMap::to_text)
//! ```

use std::fs;
use std::path::Path;

use thiserror::Error;

use super::{Peak, SubbandPyramid};

pub const MAGIC: &[u8; 8] = b"MFPYRAMD";
pub const VERSION: u16 = 1;

#[derive(Debug, Error, PartialEq)]
pub enum ContainerError {
    #[error("not a pyramid container (bad magic)")]
    BadMagic,
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u16),
    #[error("container truncated: needed {needed} more bytes at offset {offset}")]
    Truncated { offset: usize, needed: usize },
    #[error("unsupported peak {0}")]
    BadPeak(u32),
    #[error("filter name is not valid UTF-8")]
    BadName,
    #[error("coefficient {0} is not finite")]
    NonFinite(usize),
    #[error("invalid layout: {0}")]
    Layout(String),
    #[error("channel map trailer does not match the header geometry")]
    TrailerMismatch,
    #[error("{0} unexpected bytes after the channel map")]
    TrailingBytes(usize),
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], ContainerError> {
        let available = self.data.len() - self.pos;
        if n > available {
            return Err(ContainerError::Truncated {
                offset: self.pos,
                needed: n - available,
            });
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn u16(&mut self) -> Result<u16, ContainerError> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, ContainerError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

pub fn encode_pyramid(pyr: &SubbandPyramid) -> Vec<u8> {
    let name = pyr.filter().as_bytes();
    let map = pyr.channel_map().to_text();
    let mut out = Vec::with_capacity(40 + name.len() + 8 * pyr.plane().len() + map.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    for v in [
        pyr.width() as u32,
        pyr.height() as u32,
        pyr.levels() as u32,
        pyr.multiplicity() as u32,
        pyr.peak().maxval(),
    ] {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(name.len() as u16).to_le_bytes());
    out.extend_from_slice(name);
    for v in pyr.plane() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out.extend_from_slice(&(map.len() as u32).to_le_bytes());
    out.extend_from_slice(map.as_bytes());
    out
}

pub fn decode_pyramid(data: &[u8]) -> Result<SubbandPyramid, ContainerError> {
    let mut rd = Reader { data, pos: 0 };
    if rd.take(8).map_err(|_| ContainerError::BadMagic)? != MAGIC {
        return Err(ContainerError::BadMagic);
    }
    let version = rd.u16()?;
    if version != VERSION {
        return Err(ContainerError::UnsupportedVersion(version));
    }
    let width = rd.u32()? as usize;
    let height = rd.u32()? as usize;
    let levels = rd.u32()? as usize;
    let r = rd.u32()? as usize;
    let maxval = rd.u32()?;
    let peak = Peak::from_maxval(maxval).ok_or(ContainerError::BadPeak(maxval))?;
    let name_len = rd.u16()? as usize;
    let name = std::str::from_utf8(rd.take(name_len)?)
        .map_err(|_| ContainerError::BadName)?
        .to_string();

    let count = width
        .checked_mul(height)
        .ok_or_else(|| ContainerError::Layout(format!("{width}x{height} overflows")))?;
    let bytes = rd.take(
        count
            .checked_mul(8)
            .ok_or_else(|| ContainerError::Layout(format!("{width}x{height} overflows")))?,
    )?;
    let mut plane = Vec::with_capacity(count);
    for (i, chunk) in bytes.chunks_exact(8).enumerate() {
        let v = f64::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(ContainerError::NonFinite(i));
        }
        plane.push(v);
    }

    let map_len = rd.u32()? as usize;
    let map = rd.take(map_len)?;
    if rd.pos != data.len() {
        return Err(ContainerError::TrailingBytes(data.len() - rd.pos));
    }
    let pyr = SubbandPyramid::from_parts(name, r, width, height, levels, peak, plane)
        .map_err(|e| ContainerError::Layout(e.to_string()))?;
    if map != pyr.channel_map().to_text().as_bytes() {
        return Err(ContainerError::TrailerMismatch);
    }
    Ok(pyr)
}

pub fn write_pyramid(pyr: &SubbandPyramid, path: impl AsRef<Path>) -> crate::Result<()> {
    fs::write(path, encode_pyramid(pyr))?;
    Ok(())
}

pub fn read_pyramid(path: impl AsRef<Path>) -> crate::Result<SubbandPyramid> {
    Ok(decode_pyramid(&fs::read(path)?)?)
}
