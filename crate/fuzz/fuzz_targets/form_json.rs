#![no_main]

use gml::GammaTypeForm;
use libfuzzer_sys::fuzz_target;
use gml::specfun::ComplexValue;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(form) = GammaTypeForm::from_json_str(text) else { return };
    // accepted forms must round-trip and evaluate without panicking
    let again = GammaTypeForm::from_json_str(&form.to_json_string()).expect("round trip");
    assert_eq!(again.to_json_string(), form.to_json_string());
    let _ = form.strip();
    let _ = form.asymptotic_profile();
    let _ = form.evaluate(ComplexValue::new(0.25, 1.0));
});
