#include "nclab/json_io.hpp"

#include <string>

namespace nclab::io {

using nlohmann::json;
using opalg::AlgebraElement;
using opalg::TraceContext;

namespace {

double number_from(const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string())
        return static_cast<double>(parse_rational(v.get<std::string>()));
    throw ConfigError("expected a number or a numeric string");
}

std::vector<std::vector<double>> grid_from(const json& j) {
    std::vector<std::vector<double>> out;
    for (const auto& row : j) {
        std::vector<double> r;
        for (const auto& v : row) r.push_back(number_from(v));
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

json matrix_to_json(const CMatrix& m) {
    json re = json::array(), im = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json rr = json::array(), ri = json::array();
        for (int j2 = 0; j2 < m.cols(); ++j2) {
            rr.push_back(m(i, j2).real());
            ri.push_back(m(i, j2).imag());
        }
        re.push_back(rr);
        im.push_back(ri);
    }
    json out;
    out["re"] = re;
    out["im"] = im;
    return out;
}

CMatrix matrix_from_json(const json& j) {
    if (!j.contains("re")) throw ConfigError("matrix literal: missing 're'");
    const auto re = grid_from(j.at("re"));
    const int rows = static_cast<int>(re.size());
    const int cols = rows > 0 ? static_cast<int>(re.front().size()) : 0;
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (static_cast<int>(re[i].size()) != cols)
            throw ConfigError("matrix literal: ragged 're'");
        for (int c = 0; c < cols; ++c) m(i, c) = re[i][c];
    }
    if (j.contains("im")) {
        const auto im = grid_from(j.at("im"));
        if (static_cast<int>(im.size()) != rows)
            throw ConfigError("matrix literal: 'im' shape mismatch");
        for (int i = 0; i < rows; ++i)
            for (int c = 0; c < cols; ++c) m(i, c) += Complex(0.0, im[i][c]);
    }
    return m;
}

json element_to_json(const AlgebraElement& x) {
    json out = matrix_to_json(x.mat);
    out["dim"] = x.ctx.dim;
    json w = json::array();
    for (int i = 0; i < x.ctx.dim; ++i) w.push_back(x.ctx.weight(i));
    out["weights"] = w;
    return out;
}

AlgebraElement element_from_json(const json& j) {
    CMatrix m = matrix_from_json(j);
    const int dim = j.contains("dim") ? j.at("dim").get<int>() : m.rows();
    if (m.rows() != dim || m.cols() != dim)
        throw ConfigError("element literal: matrix is not dim x dim");
    TraceContext ctx = TraceContext::counting(dim);
    if (j.contains("weights") && !j.at("weights").empty()) {
        std::vector<double> w;
        for (const auto& v : j.at("weights")) w.push_back(number_from(v));
        bool unit = true;
        for (double x2 : w) unit = unit && x2 == 1.0;
        if (!unit) ctx = TraceContext::weighted(std::move(w));
    }
    return {std::move(ctx), std::move(m)};
}

RMatrix rmatrix_from_json(const json& j) {
    const json& re = j.contains("re") ? j.at("re") : j;
    const int rows = static_cast<int>(re.size());
    const int cols = rows > 0 ? static_cast<int>(re.front().size()) : 0;
    RMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        int c = 0;
        for (const auto& v : re[static_cast<size_t>(i)]) {
            m(i, c) = rational_from_json(v);
            ++c;
        }
        if (c != cols) throw ConfigError("rational matrix: ragged rows");
    }
    return m;
}

Rational rational_from_json(const json& v) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number()) {
        // floats only when they are exact small dyadics; otherwise demand strings
        const double d = v.get<double>();
        const double scaled = d * 4096.0;
        if (scaled == std::nearbyint(scaled))
            return Rational(static_cast<long long>(scaled), 4096);
        throw ConfigError("rational literal: use a string like \"1/3\" for non-dyadic values");
    }
    throw ConfigError("rational literal: unsupported json type");
}

json lamperti_to_json(const lamperti::LampertiOperator& t) {
    json out;
    out["w"] = element_to_json(t.w);
    out["b"] = element_to_json(t.b);
    json jj;
    switch (t.jordan.kind) {
        case lamperti::JordanKind::conjugation:
            jj["kind"] = "conjugation";
            jj["u"] = matrix_to_json(t.jordan.u);
            break;
        case lamperti::JordanKind::transpose_conjugation:
            jj["kind"] = "transpose-conjugation";
            jj["u"] = matrix_to_json(t.jordan.u);
            break;
        case lamperti::JordanKind::point_permutation:
            jj["kind"] = "point-permutation";
            jj["pi"] = t.jordan.pi;
            if (!t.jordan.mask.empty()) jj["mask"] = t.jordan.mask;
            break;
    }
    out["J"] = jj;
    return out;
}

lamperti::LampertiOperator lamperti_from_json(const json& j) {
    const AlgebraElement w = element_from_json(j.at("w"));
    const AlgebraElement b = element_from_json(j.at("b"));
    const json& jj = j.at("J");
    const std::string kind = jj.at("kind").get<std::string>();
    lamperti::JordanDescriptor desc = [&] {
        if (kind == "conjugation")
            return lamperti::JordanDescriptor::conjugation(matrix_from_json(jj.at("u")));
        if (kind == "transpose-conjugation")
            return lamperti::JordanDescriptor::transpose_conjugation(
                matrix_from_json(jj.at("u")));
        if (kind == "point-permutation") {
            std::vector<double> mask;
            if (jj.contains("mask")) mask = jj.at("mask").get<std::vector<double>>();
            return lamperti::JordanDescriptor::point_permutation(
                jj.at("pi").get<std::vector<int>>(), std::move(mask));
        }
        throw ConfigError("lamperti literal: unknown J kind '" + kind + "'");
    }();
    return lamperti::make_lamperti(w, b, std::move(desc));
}

harmonic::SpacePtr space_from_json(const json& j) {
    if (j.contains("kind")) {
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "z-interval") return harmonic::z_interval(j.at("n").get<int>());
        if (kind == "z2-box")
            return harmonic::z2_box(j.at("w").get<int>(), j.at("h").get<int>());
        if (kind == "two-cluster")
            return harmonic::two_cluster(j.at("n1").get<int>(), j.at("n2").get<int>(),
                                         number_from(j.at("gap")));
        throw ConfigError("space literal: unknown kind '" + kind + "'");
    }
    const auto dist = grid_from(j.at("dist"));
    std::vector<double> weights;
    if (j.contains("weights"))
        for (const auto& v : j.at("weights")) weights.push_back(number_from(v));
    else
        weights.assign(dist.size(), 1.0);
    return harmonic::make_space(dist, weights);
}

json space_to_json(const harmonic::FiniteMetricSpace& space) {
    json out;
    out["points"] = space.size();
    out["dist"] = space.dist;
    out["weights"] = space.weight;
    return out;
}

}  // namespace nclab::io
