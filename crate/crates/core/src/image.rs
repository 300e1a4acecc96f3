//! Binary PGM (P5) reading and writing plus the 8x8 block plumbing the
//! transform pipeline needs: level shift, edge-replication padding, crop,
//! and clamp.

use std::fmt;
use std::io::Write;
use std::path::Path;

use crate::dct::Block8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageBuffer {
    pub width: usize,
    pub height: usize,
    /// Row-major 8-bit grayscale samples, width * height of them.
    pub samples: Vec<u8>,
}

impl ImageBuffer {
    pub fn new(width: usize, height: usize, samples: Vec<u8>) -> Result<Self, PgmError> {
        if width == 0 || height == 0 || samples.len() != width * height {
            return Err(PgmError::Malformed {
                offset: 0,
                what: format!(
                    "dimension mismatch: {}x{} vs {} samples",
                    width,
                    height,
                    samples.len()
                ),
            });
        }
        Ok(ImageBuffer {
            width,
            height,
            samples,
        })
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.samples[y * self.width + x]
    }
}

#[derive(Debug)]
pub enum PgmError {
    UnsupportedFormat(String),
    Malformed { offset: usize, what: String },
    Io(std::io::Error),
}

impl fmt::Display for PgmError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PgmError::UnsupportedFormat(magic) => {
                write!(
                    f,
                    "unsupported format '{magic}' (only binary P5 is handled)"
                )
            }
            PgmError::Malformed { offset, what } => {
                write!(f, "malformed PGM at byte {offset}: {what}")
            }
            PgmError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for PgmError {}

impl From<std::io::Error> for PgmError {
    fn from(e: std::io::Error) -> Self {
        PgmError::Io(e)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn read_number(&mut self, what: &str) -> Result<usize, PgmError> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PgmError::Malformed {
                offset: start,
                what: format!("expected {what}"),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse().map_err(|_| PgmError::Malformed {
            offset: start,
            what: format!("{what} out of range"),
        })
    }
}

/// Parse a binary PGM. Header whitespace and comments are tolerated; the
/// payload must be exactly width * height bytes after the single
/// whitespace byte that closes the header.
pub fn parse_pgm(bytes: &[u8]) -> Result<ImageBuffer, PgmError> {
    if bytes.len() < 2 {
        return Err(PgmError::Malformed {
            offset: 0,
            what: "file shorter than a magic number".into(),
        });
    }
    let magic = &bytes[..2];
    if magic != b"P5" {
        return Err(PgmError::UnsupportedFormat(
            String::from_utf8_lossy(magic).into_owned(),
        ));
    }

    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.read_number("width")?;
    let height = cur.read_number("height")?;
    let maxval = cur.read_number("maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(PgmError::UnsupportedFormat(format!(
            "maxval {maxval} (8-bit grayscale only)"
        )));
    }
    if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
        return Err(PgmError::Malformed {
            offset: cur.pos,
            what: "missing whitespace after maxval".into(),
        });
    }
    cur.pos += 1;

    let need = width.checked_mul(height).ok_or(PgmError::Malformed {
        offset: cur.pos,
        what: "dimensions overflow".into(),
    })?;
    let have = bytes.len() - cur.pos;
    if have < need {
        return Err(PgmError::Malformed {
            offset: bytes.len(),
            what: format!("payload truncated: need {need} bytes, found {have}"),
        });
    }
    ImageBuffer::new(width, height, bytes[cur.pos..cur.pos + need].to_vec())
}

pub fn read_pgm(path: &Path) -> Result<ImageBuffer, PgmError> {
    parse_pgm(&std::fs::read(path)?)
}

/// Write with a normalized header: pixel payload is preserved byte for
/// byte across a read/write cycle.
pub fn write_pgm(path: &Path, img: &ImageBuffer) -> Result<(), PgmError> {
    let mut out = Vec::with_capacity(img.samples.len() + 32);
    write!(out, "P5\n{} {}\n255\n", img.width, img.height)?;
    out.extend_from_slice(&img.samples);
    std::fs::write(path, out)?;
    Ok(())
}

/// An image padded up to 8x8 block multiples by edge replication, with
/// the original size kept for cropping back.
#[derive(Debug, Clone)]
pub struct PaddedImage {
    pub image: ImageBuffer,
    pub orig_width: usize,
    pub orig_height: usize,
}

pub fn pad_to_blocks(img: &ImageBuffer) -> PaddedImage {
    let pw = img.width.div_ceil(8) * 8;
    let ph = img.height.div_ceil(8) * 8;
    let mut samples = Vec::with_capacity(pw * ph);
    for y in 0..ph {
        let sy = y.min(img.height - 1);
        for x in 0..pw {
            let sx = x.min(img.width - 1);
            samples.push(img.get(sx, sy));
        }
    }
    PaddedImage {
        image: ImageBuffer::new(pw, ph, samples).expect("padded dimensions consistent"),
        orig_width: img.width,
        orig_height: img.height,
    }
}

impl PaddedImage {
    pub fn crop(&self) -> ImageBuffer {
        let mut samples = Vec::with_capacity(self.orig_width * self.orig_height);
        for y in 0..self.orig_height {
            let row = y * self.image.width;
            samples.extend_from_slice(&self.image.samples[row..row + self.orig_width]);
        }
        ImageBuffer::new(self.orig_width, self.orig_height, samples).expect("crop consistent")
    }

    pub fn blocks_x(&self) -> usize {
        self.image.width / 8
    }

    pub fn blocks_y(&self) -> usize {
        self.image.height / 8
    }

    /// Level-shifted block (samples minus 128) at block coordinates.
    pub fn block(&self, bx: usize, by: usize) -> Block8 {
        let mut b = [[0.0f64; 8]; 8];
        for (r, row) in b.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v = self.image.get(bx * 8 + c, by * 8 + r) as f64 - 128.0;
            }
        }
        b
    }

    /// Store a reconstructed block: add 128 back, round, clamp to 8 bits.
    pub fn store_block(&mut self, bx: usize, by: usize, block: &Block8) {
        for (r, row) in block.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let px = (v + 128.0).round().clamp(0.0, 255.0) as u8;
                let w = self.image.width;
                self.image.samples[(by * 8 + r) * w + bx * 8 + c] = px;
            }
        }
    }
}
