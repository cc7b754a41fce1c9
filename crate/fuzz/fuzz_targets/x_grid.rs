#![no_main]

use gml::cli::parse_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(xs) = parse_grid(text) {
        assert!(xs.len() >= 2);
        assert!(xs.windows(2).all(|w| w[1] > w[0]));
    }
});
