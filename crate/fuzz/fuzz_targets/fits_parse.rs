#![no_main]

use libfuzzer_sys::fuzz_target;
use multifilter::imageio::fits::parse_fits;

fuzz_target!(|data: &[u8]| {
    if let Ok(img) = parse_fits(data) {
        assert_eq!(img.samples().len(), img.width() * img.height());
    }
});
