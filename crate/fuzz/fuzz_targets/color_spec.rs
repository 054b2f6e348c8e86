#![no_main]

use hdds::HclColor;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = text.parse::<HclColor>() {
        let rgb = c.to_rgb();
        for v in [rgb.r, rgb.g, rgb.b] {
            assert!((0.0..=1.0).contains(&v));
        }
        let again: HclColor = c.to_string().parse().expect("display output parses");
        assert_eq!(again, c);
    }
});
