#![no_main]

use isogrow::volume::decode_slice;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok((w, h, values)) = decode_slice(data) {
        assert_eq!(values.len() as u64, w as u64 * h as u64);
    }
});
