//! The checked-in fuzz seeds must exercise the success paths.

use std::fs;
use std::path::Path;

use isogrow::growth::SeedRegion;
use isogrow::interp::InterpParams;
use isogrow::mesh::parse_obj;
use isogrow::volume::{decode_raw, decode_slice, Endianness, RawDescriptor, ValueKind};

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut files: Vec<_> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty());
    files.iter().map(|f| fs::read(f).unwrap()).collect()
}

#[test]
fn raw_seeds_decode() {
    for s in seeds("decode_raw") {
        let dims = [s[0] as usize % 9, s[1] as usize % 9, s[2] as usize % 9];
        let kind = [ValueKind::U8, ValueKind::U16, ValueKind::F32][s[3] as usize % 3];
        let end = if s[3] & 4 == 0 { Endianness::Little } else { Endianness::Big };
        decode_raw(&s[4..], dims, kind, end).unwrap();
    }
}

#[test]
fn descriptor_seeds_parse() {
    for s in seeds("descriptor") {
        RawDescriptor::parse(std::str::from_utf8(&s).unwrap()).unwrap();
    }
}

#[test]
fn obj_seeds_parse() {
    for s in seeds("parse_obj") {
        assert!(parse_obj(std::str::from_utf8(&s).unwrap(), "seed").unwrap().triangle_count() > 0);
    }
}

#[test]
fn slice_seeds_decode() {
    for s in seeds("decode_slice") {
        decode_slice(&s).unwrap();
    }
}

#[test]
fn flag_seeds_parse() {
    for s in seeds("flag_values") {
        let t = String::from_utf8(s).unwrap();
        assert!(t.parse::<InterpParams>().is_ok() || t.parse::<SeedRegion>().is_ok(), "{t}");
    }
}
