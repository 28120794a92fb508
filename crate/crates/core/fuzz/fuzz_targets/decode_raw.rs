#![no_main]

use isogrow::volume::{decode_raw, Endianness, ValueKind};
use libfuzzer_sys::fuzz_target;

// first three bytes pick the dims, the fourth the layout, the rest is data
fuzz_target!(|data: &[u8]| {
    if data.len() < 4 {
        return;
    }
    let dims = [data[0] as usize % 9, data[1] as usize % 9, data[2] as usize % 9];
    let kind = [ValueKind::U8, ValueKind::U16, ValueKind::F32][data[3] as usize % 3];
    let endianness = if data[3] & 4 == 0 { Endianness::Little } else { Endianness::Big };
    if let Ok(v) = decode_raw(&data[4..], dims, kind, endianness) {
        assert_eq!(v.values().len(), dims.iter().product::<usize>());
    }
});
