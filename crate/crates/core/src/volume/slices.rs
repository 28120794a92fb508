use std::path::Path;

use image::DynamicImage;

use super::Volume;
use crate::error::{Error, Result};

/// Decodes one grayscale slice image into (width, height, samples).
pub fn decode_slice(bytes: &[u8]) -> Result<(u32, u32, Vec<f32>)> {
    let img = image::load_from_memory(bytes).map_err(|source| Error::Image {
        path: "<memory>".into(),
        source,
    })?;
    grayscale(img).ok_or_else(|| Error::InvalidVolume("slice is not 8/16-bit grayscale".into()))
}

fn grayscale(img: DynamicImage) -> Option<(u32, u32, Vec<f32>)> {
    let (w, h) = (img.width(), img.height());
    let values = match img {
        DynamicImage::ImageLuma8(buf) => buf.into_raw().into_iter().map(f32::from).collect(),
        DynamicImage::ImageLuma16(buf) => buf.into_raw().into_iter().map(f32::from).collect(),
        _ => return None,
    };
    Some((w, h, values))
}

/// Stacks grayscale images into a volume; slice `s` becomes z-plane `s`.
pub fn load_slices<P: AsRef<Path>>(paths: &[P]) -> Result<Volume> {
    let mut size = None;
    let mut values = Vec::new();
    for (index, p) in paths.iter().enumerate() {
        let p = p.as_ref();
        let img = image::open(p).map_err(|source| Error::Image {
            path: p.to_path_buf(),
            source,
        })?;
        let (w, h, plane) = grayscale(img).ok_or_else(|| {
            Error::InvalidVolume(format!("{}: not an 8/16-bit grayscale image", p.display()))
        })?;
        match size {
            None => size = Some((w, h)),
            Some(expected) if expected != (w, h) => {
                return Err(Error::SliceMismatch {
                    index,
                    expected,
                    found: (w, h),
                })
            }
            _ => {}
        }
        values.extend(plane);
    }
    let (w, h) = size.ok_or_else(|| Error::InvalidVolume("no slices given".into()))?;
    Volume::new([w as usize, h as usize, paths.len()], values)
}
