//! Term lists of the sixteenth-power bilinear estimate, transcribed once.

/// Sixteenth power of the bilinear sum before `Q` is optimised over
/// `[1, M^{1/4}]`.
pub const BILINEAR_16TH_WITH_Q: &[&str] = &[
    "M^{14}*L^{13}*F",
    "M^{14}*L^{12}*Q^{13/3}*F",
    "M^{53/4}*L^{12}*Q^{28/3}*F",
    "M^{53/4}*L^{13}*Q^{5}*F",
    "M^{16}*L^{14}*Q^{4/3}",
    "M^{57/4}*L^{16}*Q",
    "M^{17}*L^{18}*F^{-1}*Q^{-7}",
    "M^{16}*L^{16}*Q^{-8}",
    "M^{15}*L^{16}*Q^{-4}",
    "M^{16}*L^{15}*Q^{-3}",
];

/// Sixteenth power after eliminating `Q`, as printed.
pub const BILINEAR_16TH_OPTIMISED: &[&str] = &[
    "M^{14}*L^{13}*F",
    "M^{515/34}*L^{243/17}*F^{4/17}",
    "M^{544/37}*L^{496/37}*F^{24/37}",
    "M^{363/25}*L^{352/25}*F^{12/25}",
    "M^{167/11}*L^{303/22}*F^{9/22}",
    "M^{383/26}*L^{184/13}*F^{6/13}",
    "M^{579/40}*L^{74/5}*F^{3/10}",
    "M^{2269/148}*L^{528/37}*F^{9/37}",
    "M^{711/48}*L^{181/12}*F^{1/6}",
    "M^{186/13}*L^{184/13}*F^{8/13}",
    "M^{128/9}*L^{44/3}*F^{4/9}",
    "M^{479/32}*L^{57/4}*F^{3/8}",
    "M^{61/4}*L^{18}*F^{-1}",
    "M^{431/28}*L^{108/7}*F^{-1/7}",
    "M^{404/25}*L^{366/25}*F^{-4/25}",
    "M^{467/32}*L^{65/4}*F^{-1/8}",
    "M^{61/4}*L^{15}",
    "M^{63/4}*L^{29/2}",
    "M^{16}*L^{186/13}",
    "M^{130/9}*L^{16}",
    "M^{235/16}*L^{63/4}",
];

/// The bilinear estimate itself (first power), as stated.
pub const BILINEAR_STATED: &[&str] = &[
    "M^{7/8}*L^{13/16}*F^{1/16}",
    "M^{515/544}*L^{243/272}*F^{1/68}",
    "M^{34/37}*L^{31/37}*F^{3/74}",
    "M^{363/400}*L^{22/25}*F^{3/100}",
    "M^{167/176}*L^{303/352}*F^{9/352}",
    "M^{383/416}*L^{23/26}*F^{3/104}",
    "M^{579/640}*L^{37/40}*F^{3/160}",
    "M^{2269/2368}*L^{33/37}*F^{9/592}",
    "M^{711/768}*L^{181/192}*F^{1/96}",
    "M^{93/104}*L^{23/26}*F^{1/26}",
    "M^{8/9}*L^{11/12}*F^{1/36}",
    "M^{479/512}*L^{57/64}*F^{3/128}",
    "M^{61/64}*L^{9/8}*F^{-1/16}",
    "M^{431/448}*L^{27/28}*F^{-1/112}",
    "M^{101/100}*L^{183/200}*F^{-1/100}",
    "M^{467/512}*L^{65/64}*F^{-1/128}",
    "M^{61/64}*L^{15/16}",
    "M^{63/64}*L^{29/32}",
    "M*L^{93/104}",
    "M^{65/72}*L",
    "M^{235/256}*L^{63/64}",
];
