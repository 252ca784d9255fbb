//! Binary (P5) 8-bit PGM images.

use hfsac_core::analysis::GrayImage;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary PGM (expected P5 magic)")]
    BadMagic,
    #[error("malformed PGM header: {0}")]
    Header(&'static str),
    #[error("only 8-bit PGM (maxval 255) is supported, got maxval {0}")]
    UnsupportedMaxval(u32),
    #[error("PGM pixel data has {got} bytes, expected {expected}")]
    PixelCount { expected: usize, got: usize },
}

pub fn read(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for field in &mut fields {
        *field = header_number(bytes, &mut pos)?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(PgmError::Header("missing whitespace after maxval")),
    }
    let (w, h) = (width as usize, height as usize);
    let raster = &bytes[pos..];
    if raster.len() != w * h {
        return Err(PgmError::PixelCount {
            expected: w * h,
            got: raster.len(),
        });
    }
    GrayImage::new(w, h, raster.to_vec()).map_err(|_| PgmError::Header("dimensions"))
}

fn header_number(bytes: &[u8], pos: &mut usize) -> Result<u32, PgmError> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while !matches!(bytes.get(*pos), None | Some(b'\n') | Some(b'\r')) {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(b) if b.is_ascii_digit() => break,
            Some(_) => return Err(PgmError::Header("unexpected character")),
            None => return Err(PgmError::Header("unexpected end of header")),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
        *pos += 1;
    }
    std::str::from_utf8(&bytes[start..*pos])
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or(PgmError::Header("number out of range"))
}

pub fn write(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    out.extend_from_slice(img.pixels());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_comments_and_whitespace() {
        let mut bytes = b"P5 # made by hand\n3\t2\n# max\n255\n".to_vec();
        bytes.extend_from_slice(&[1, 2, 3, 4, 5, 6]);
        let img = read(&bytes).unwrap();
        assert_eq!((img.width(), img.height()), (3, 2));
        assert_eq!(img.pixels(), [1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn pixel_bytes_may_look_like_whitespace() {
        let mut bytes = b"P5\n2 1\n255\n".to_vec();
        bytes.extend_from_slice(b"\n ");
        assert_eq!(read(&bytes).unwrap().pixels(), b"\n ");
    }

    #[test]
    fn rejects_unsupported() {
        assert_eq!(read(b"P2\n1 1\n255\n0"), Err(PgmError::BadMagic));
        assert_eq!(
            read(b"P5\n1 1\n65535\n\0\0"),
            Err(PgmError::UnsupportedMaxval(65535))
        );
        assert_eq!(
            read(b"P5\n2 2\n255\n\0"),
            Err(PgmError::PixelCount {
                expected: 4,
                got: 1
            })
        );
        assert!(matches!(read(b"P5\n2"), Err(PgmError::Header(_))));
    }
}
