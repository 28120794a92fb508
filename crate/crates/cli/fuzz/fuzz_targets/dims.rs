#![no_main]

use isogrow_cli::parse_dims;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_dims(text) {
        let again = parse_dims(&format!("{},{},{}", d[0], d[1], d[2])).unwrap();
        assert_eq!(again, d);
    }
});
