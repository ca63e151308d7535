use std::fs;
use std::path::Path;

use super::RasterImage;
use crate::error::{Error, Result};

/// Binary PPM (P6) bytes.
pub fn encode_ppm(img: &RasterImage) -> Vec<u8> {
    let mut out = format!("P6\n{} {}\n255\n", img.width_px, img.height_px).into_bytes();
    out.reserve(img.pixels.len() * 3);
    for px in &img.pixels {
        out.extend_from_slice(px);
    }
    out
}

pub fn write_image(img: &RasterImage, path: &Path) -> Result<()> {
    fs::write(path, encode_ppm(img)).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
