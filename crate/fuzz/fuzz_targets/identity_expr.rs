#![no_main]

use gml::cli::parse_expr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(expr) = parse_expr(text) else { return };
    if let Ok(form) = expr.to_form() {
        let _ = form.strip();
        let _ = form.moments_equal(&form, 1e-10);
    }
});
