"""Reference values for the three bundled benchmark tables.

TABLE1 and TABLE2 hold ``(exact, leading_order)`` cell pairs as printed
at four decimals.  TABLE3 keeps the reference simulation column next to
its leading-order value, plus the reported credible intervals.  The
printed cells are themselves rounded, so comparisons allow two units in
the last printed digit.
"""

# (theta0, n) -> {criterion: (exact, leading_order)}; the studies are
# eta1 (0.5, 0.25, 0.20, 0.30), eta2 (5.0, 3.5, 2.5, 3.0) and
# eta3 (25.0, 20.0, 18.0, 15.0) as (theta0, mu0, sigma2, tau2).
TABLE1 = {
    (0.5, 10): {"apvc": (0.0187, 0.0200), "alc-quantile": (0.2591, 0.2674), "acc": (0.1449, 0.1403)},
    (0.5, 30): {"apvc": (0.0065, 0.0067), "alc-quantile": (0.3617, 0.3657), "acc": (0.2431, 0.2405)},
    (0.5, 50): {"apvc": (0.0039, 0.0040), "alc-quantile": (0.3934, 0.3960), "acc": (0.3093, 0.3074)},
    (0.5, 100): {"apvc": (0.0020, 0.0020), "alc-quantile": (0.4250, 0.4264), "acc": (0.4251, 0.4238)},
    (5.0, 10): {"apvc": (0.2308, 0.2500), "alc-quantile": (4.0944, 4.1776), "acc": (0.3972, 0.3829)},
    (5.0, 30): {"apvc": (0.0811, 0.0833), "alc-quantile": (4.4911, 4.5252), "acc": (0.6200, 0.6135)},
    (5.0, 50): {"apvc": (0.0492, 0.0500), "alc-quantile": (4.6106, 4.6322), "acc": (0.7404, 0.7364)},
    (5.0, 100): {"apvc": (0.0248, 0.0250), "alc-quantile": (4.7286, 4.7399), "acc": (0.8877, 0.8862)},
    (25.0, 10): {"apvc": (1.6071, 1.8000), "alc-quantile": (22.3791, 22.7932), "acc": (0.6759, 0.6485)},
    (25.0, 30): {"apvc": (0.5769, 0.6000), "alc-quantile": (23.5583, 23.7259), "acc": (0.9002, 0.8934)},
    (25.0, 50): {"apvc": (0.3516, 0.3600), "alc-quantile": (23.9075, 24.0131), "acc": (0.9650, 0.9628)},
    (25.0, 100): {"apvc": (0.1779, 0.1800), "alc-quantile": (24.2470, 24.3022), "acc": (0.9970, 0.9968)},
}

# (model, theta0, n) -> (exact, leading_order), expected posterior
# variance only.  Gamma-Poisson studies: (a, b) = (2.5, 3.5), (8.0, 7.5),
# (10.0, 12.0); the Bernoulli studies use the uniform prior.
TABLE2 = {
    ("poisson", 0.5, 10): (0.0544, 0.0500),
    ("poisson", 0.5, 30): (0.0175, 0.0167),
    ("poisson", 0.5, 50): (0.0103, 0.0100),
    ("poisson", 0.5, 100): (0.0051, 0.0050),
    ("poisson", 1.6, 10): (0.0725, 0.1600),
    ("poisson", 1.6, 30): (0.0384, 0.0533),
    ("poisson", 1.6, 50): (0.0260, 0.0320),
    ("poisson", 1.6, 100): (0.0144, 0.0160),
    ("poisson", 1.5, 10): (0.0675, 0.1500),
    ("poisson", 1.5, 30): (0.0356, 0.0500),
    ("poisson", 1.5, 50): (0.0242, 0.0300),
    ("poisson", 1.5, 100): (0.0134, 0.0150),
    ("bernoulli", 0.20, 10): (0.0136, 0.0160),
    ("bernoulli", 0.20, 30): (0.0050, 0.0053),
    ("bernoulli", 0.20, 50): (0.0031, 0.0032),
    ("bernoulli", 0.20, 100): (0.0016, 0.0016),
    ("bernoulli", 0.50, 10): (0.0179, 0.0250),
    ("bernoulli", 0.50, 30): (0.0073, 0.0083),
    ("bernoulli", 0.50, 50): (0.0046, 0.0050),
    ("bernoulli", 0.50, 100): (0.0024, 0.0025),
    ("bernoulli", 0.75, 10): (0.0149, 0.0188),
    ("bernoulli", 0.75, 30): (0.0057, 0.0063),
    ("bernoulli", 0.75, 50): (0.0036, 0.0038),
    ("bernoulli", 0.75, 100): (0.0018, 0.0019),
}

# (theta0, n) -> reference cells for the exponential-rate study with the
# Beta(1.5, 1.5) prior: simulated mean next to the leading-order value
# for the posterior variance and the 95% credible length, plus the
# reported HPD intervals (simulated and leading-order endpoints).  The
# reference's simulated intervals are centered at the posterior mean, so
# only their widths are comparable with the density-level-set intervals
# computed here.
TABLE3 = {
    (0.25, 10): {"var": (0.0116, 0.0062), "alc": (0.3912, 0.3099),
                 "hpd_emp": (0.1475, 0.5388), "hpd_asym": (0.1633, 0.4732)},
    (0.25, 30): {"var": (0.0031, 0.0021), "alc": (0.2084, 0.1789),
                 "hpd_emp": (0.1742, 0.3826), "hpd_asym": (0.1803, 0.3592)},
    (0.25, 50): {"var": (0.0018, 0.0012), "alc": (0.1599, 0.1386),
                 "hpd_emp": (0.1884, 0.3483), "hpd_asym": (0.1939, 0.3325)},
    (0.25, 100): {"var": (0.0008, 0.0006), "alc": (0.1106, 0.0980),
                  "hpd_emp": (0.2017, 0.3123), "hpd_asym": (0.2055, 0.3035)},
    (0.50, 10): {"var": (0.0238, 0.0250), "alc": (0.5696, 0.6198),
                 "hpd_emp": (0.2703, 0.8399), "hpd_asym": (0.2320, 0.8518)},
    (0.50, 30): {"var": (0.0107, 0.0083), "alc": (0.3886, 0.3578),
                 "hpd_emp": (0.3387, 0.7273), "hpd_asym": (0.3409, 0.6988)},
    (0.50, 50): {"var": (0.0068, 0.0050), "alc": (0.3105, 0.2772),
                 "hpd_emp": (0.3727, 0.6832), "hpd_asym": (0.3798, 0.6570)},
    (0.50, 100): {"var": (0.0034, 0.0025), "alc": (0.2188, 0.1960),
                  "hpd_emp": (0.4020, 0.6208), "hpd_asym": (0.4084, 0.6044)},
    (0.75, 10): {"var": (0.0348, 0.0562), "alc": (0.5729, 0.9297),
                 "hpd_emp": (0.3738, 0.9467), "hpd_asym": (0.2135, 1.1432)},
    (0.75, 30): {"var": (0.0140, 0.0187), "alc": (0.4382, 0.5368),
                 "hpd_emp": (0.4986, 0.9368), "hpd_asym": (0.4556, 0.9923)},
    (0.75, 50): {"var": (0.0102, 0.0112), "alc": (0.3771, 0.4158),
                 "hpd_emp": (0.5511, 0.9282), "hpd_asym": (0.5349, 0.9506)},
    (0.75, 100): {"var": (0.0059, 0.0056), "alc": (0.3000, 0.2940),
                  "hpd_emp": (0.5988, 0.8988), "hpd_asym": (0.5997, 0.8937)},
}


def printed_match(value: float, printed: float, decimals: int = 4) -> bool:
    """Whether ``value`` rounds to within two units of the last printed digit."""
    return abs(round(value, decimals) - printed) <= 2.0 * 10.0**-decimals + 1e-9
