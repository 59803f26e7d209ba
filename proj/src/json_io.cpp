#include "hsurf/json_io.hpp"

namespace hsurf {

Json real_to_json(const Real& x) {
    if (x.is_exact()) return x.str();
    const Approx& a = x.approx();
    Json j;
    j["value"] = x.decimal(std::max(6, static_cast<int>(-floor_log2(a.radius) * 3 / 10 + 2)));
    std::string text = x.str();
    j["err"] = text.substr(text.find("±") + std::string("±").size());
    j["center"] = a.center.get_str();
    j["radius"] = a.radius.get_str();
    return j;
}

Real real_from_json(const Json& j) {
    if (j.is_string()) return Real::parse(j.get<std::string>());
    if (j.is_number_integer()) return Real(j.get<long>());
    if (j.is_object() && j.contains("center"))
        return Real::ball(mpq_class(j.at("center").get<std::string>()), mpq_class(j.at("radius").get<std::string>()));
    throw DomainError("not a serialized scalar: " + j.dump());
}

Json cf_to_json(const ContinuedFraction& cf) {
    Json j;
    Json q = Json::array();
    for (const auto& a : cf.quotients) q.push_back(a.get_str());
    j["a0"] = cf.a0.get_str();
    j["quotients"] = q;
    j["terminates"] = cf.terminates;
    if (cf.period_start) {
        j["period_start"] = *cf.period_start;
        j["period_length"] = cf.period_length;
    }
    return j;
}

ContinuedFraction cf_from_json(const Json& j) {
    ContinuedFraction cf;
    cf.a0 = mpz_class(j.at("a0").get<std::string>());
    for (const auto& a : j.at("quotients")) cf.quotients.emplace_back(a.get<std::string>());
    cf.terminates = j.at("terminates").get<bool>();
    if (j.contains("period_start")) {
        cf.period_start = j.at("period_start").get<std::size_t>();
        cf.period_length = j.at("period_length").get<std::size_t>();
    }
    return cf;
}

namespace {

VerdictKind verdict_from(const std::string& s) {
    for (auto v : {VerdictKind::AttractingCycle, VerdictKind::SaddleConnection, VerdictKind::CantorLamination,
                   VerdictKind::Vertical})
        if (s == verdict_name(v)) return v;
    throw DomainError("unknown verdict " + s);
}

Chamber chamber_from(const std::string& s) {
    if (s == "plus") return Chamber::plus;
    if (s == "minus") return Chamber::minus;
    throw DomainError("unknown chamber " + s);
}

TraceStatus status_from(const std::string& s) {
    for (auto t : {TraceStatus::MaxReached, TraceStatus::HitSingularity, TraceStatus::Closed, TraceStatus::Vertical})
        if (s == status_name(t)) return t;
    throw DomainError("unknown trace status " + s);
}

}  // namespace

Json to_json(const ClassifiedDirection& c) {
    Json j;
    j["s"] = real_to_json(c.s);
    j["m"] = c.kind == VerdictKind::Vertical ? Json("inf") : real_to_json(c.slope);
    j["verdict"] = verdict_name(c.kind);
    Json cert;
    if (c.kind != VerdictKind::Vertical) {
        j["normalized_slope"] = real_to_json(c.normal.slope);
        j["normalization"] = {{"psi", c.normal.used_psi}, {"phi_power", c.normal.phi_power}};
    }
    switch (c.kind) {
        case VerdictKind::AttractingCycle:
        case VerdictKind::SaddleConnection:
            cert["k"] = c.k.get_str();
            cert["n"] = c.n;
            if (c.kind == VerdictKind::SaddleConnection) cert["side"] = c.side == Side::minus ? "lower" : "upper";
            break;
        case VerdictKind::CantorLamination:
            cert["cf_prefix"] = cf_to_json(c.cf_prefix);
            cert["xi_interval"] = {c.xi_lo.get_str(), c.xi_hi.get_str()};
            cert["slope_interval"] = {real_to_json(c.slope_lo), real_to_json(c.slope_hi)};
            break;
        case VerdictKind::Vertical: break;
    }
    cert["depth"] = c.depth;
    cert["comparisons"] = c.certificate;
    j["certificate"] = cert;
    if (c.kind == VerdictKind::AttractingCycle) {
        j["y0"] = real_to_json(c.y0);
        j["scaling"] = real_to_json(c.scaling);
    }
    return j;
}

ClassifiedDirection classified_from_json(const Json& j) {
    ClassifiedDirection c;
    c.kind = verdict_from(j.at("verdict").get<std::string>());
    c.s = real_from_json(j.at("s"));
    const Json& cert = j.at("certificate");
    c.depth = cert.at("depth").get<long>();
    c.certificate = cert.at("comparisons").get<std::string>();
    if (c.kind == VerdictKind::Vertical) return c;
    c.slope = real_from_json(j.at("m"));
    c.normal.slope = real_from_json(j.at("normalized_slope"));
    c.normal.used_psi = j.at("normalization").at("psi").get<bool>();
    c.normal.phi_power = j.at("normalization").at("phi_power").get<long>();
    if (c.kind == VerdictKind::CantorLamination) {
        c.cf_prefix = cf_from_json(cert.at("cf_prefix"));
        c.xi_lo = mpq_class(cert.at("xi_interval")[0].get<std::string>());
        c.xi_hi = mpq_class(cert.at("xi_interval")[1].get<std::string>());
        c.slope_lo = real_from_json(cert.at("slope_interval")[0]);
        c.slope_hi = real_from_json(cert.at("slope_interval")[1]);
        return c;
    }
    c.k = mpz_class(cert.at("k").get<std::string>());
    c.n = cert.at("n").get<long>();
    if (c.kind == VerdictKind::SaddleConnection) {
        c.side = cert.at("side").get<std::string>() == "lower" ? Side::minus : Side::plus;
    } else {
        c.y0 = real_from_json(j.at("y0"));
        c.scaling = real_from_json(j.at("scaling"));
    }
    return c;
}

Json to_json(const CrossingEvent& e) {
    return Json{{"index", e.index},
                {"label", std::string(1, e.label)},
                {"coord", real_to_json(e.coord)},
                {"chamber", chamber_name(e.chamber)},
                {"endpoint", e.endpoint}};
}

CrossingEvent event_from_json(const Json& j) {
    CrossingEvent e;
    e.index = j.at("index").get<long>();
    e.label = j.at("label").get<std::string>().at(0);
    e.coord = real_from_json(j.at("coord"));
    e.chamber = chamber_from(j.at("chamber").get<std::string>());
    e.endpoint = j.at("endpoint").get<bool>();
    return e;
}

Json to_json(const TraceResult& r) {
    Json ev = Json::array();
    for (const auto& e : r.events) ev.push_back(to_json(e));
    Json j{{"events", ev}, {"status", status_name(r.status)}, {"word", r.word()}};
    if (r.status == TraceStatus::Closed) {
        j["period"] = r.period;
        j["period_start"] = r.period_start;
    }
    return j;
}

TraceResult trace_from_json(const Json& j) {
    TraceResult r;
    for (const auto& e : j.at("events")) r.events.push_back(event_from_json(e));
    r.status = status_from(j.at("status").get<std::string>());
    if (r.status == TraceStatus::Closed) {
        r.period = j.at("period").get<long>();
        r.period_start = j.at("period_start").get<long>();
    }
    return r;
}

Json to_json(const Tongue& t) {
    return Json{{"k", t.k.get_str()},
                {"n", t.n},
                {"lower", real_to_json(t.lower)},
                {"upper", real_to_json(t.upper)},
                {"width", real_to_json(t.width)}};
}

Json to_json(const GapSumReport& r) {
    Json j;
    j["target"] = r.target == GapTarget::K_s ? "Ks" : "Ksxi";
    j["delta"] = r.delta_exponent.get_str();
    j["terms"] = r.terms;
    j["partial"] = real_to_json(r.partial);
    if (r.partial.is_exact()) j["partial_decimal"] = r.partial.decimal(15);
    if (r.closed_form) j["closed_form"] = real_to_json(*r.closed_form);
    if (r.comparison) j["comparison_bound"] = real_to_json(*r.comparison);
    j["remainder_bound"] = real_to_json(r.remainder_bound);
    j["monotone"] = r.monotone;
    return j;
}

Json to_json(const CuttingComparison& c) {
    Json j;
    j["verdict"] = to_json(c.verdict);
    j["torus_word"] = c.torus_word;
    j["torus_cyclic"] = c.torus_cyclic;
    if (c.undecided) j["undecided"] = true;
    Json ls = Json::array();
    for (const auto& l : c.launches)
        ls.push_back({{"launch", l.launch}, {"surface_word", l.surface_word}, {"offset", l.offset}, {"agrees", l.agrees}, {"precision_exhausted", l.precision_exhausted}, {"singular", l.singular}});
    j["launches"] = ls;
    return j;
}

Json to_json(const CrossingReport& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json x{{"j", row.j},
               {"next", row.next ? std::string(1, row.next) : std::string()},
               {"x", real_to_json(row.x)},
               {"y", real_to_json(row.y)},
               {"y_minus", real_to_json(row.y_minus)},
               {"y_plus", real_to_json(row.y_plus)}};
        if (row.meeting) x["meeting"] = true;
        rows.push_back(x);
    }
    return Json{{"rational", r.rational}, {"m_minus", real_to_json(r.m_minus)}, {"m_plus", real_to_json(r.m_plus)}, {"rows", rows}};
}

}  // namespace hsurf
