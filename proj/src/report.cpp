#include "sea_mtt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace sea {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("csv row has " + std::to_string(row.size()) +
                                    " columns, header has " + std::to_string(header_.size()));
    }
    rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
}

CsvTable curve_table(const MttCurve& curve) {
    CsvTable t({"omega_rad_s", "mtt_tau", "mtt_v", "limiting"});
    for (std::size_t i = 0; i < curve.omega.size(); ++i) {
        t.add_row({format_number(curve.omega[i]), format_number(curve.mtt_tau[i]),
                   format_number(curve.mtt_v[i]), std::string(to_string(curve.limiting[i]))});
    }
    return t;
}

namespace {

// Zero -> 0, Unbounded -> the search ceiling; flags carry the distinction.
std::string bw_cell(const Bandwidth& b, const FrequencyGrid& search) {
    if (b.is_zero()) return "0";
    if (b.is_unbounded()) return format_number(search.omega_max);
    return format_number(b.omega());
}

}  // namespace

CsvTable sweep_table(const std::vector<SweepEntry>& entries, const FrequencyGrid& search) {
    CsvTable t({"param_value", "omega_mt_tau", "omega_mt_v", "omega_mt", "binding", "dc_limited",
                "dc_limited_v", "unbounded", "status"});
    for (const auto& e : entries) {
        if (!e.report) {
            t.add_row({format_number(e.value), "", "", "", "", "", "", "", "invalid"});
            continue;
        }
        const BandwidthReport& r = *e.report;
        t.add_row({format_number(e.value), bw_cell(r.omega_mt_tau, search),
                   bw_cell(r.omega_mt_v, search), bw_cell(r.omega_mt, search),
                   std::string(to_string(r.binding)), r.omega_mt_tau.is_zero() ? "1" : "0",
                   r.omega_mt_v.is_zero() ? "1" : "0", r.omega_mt.is_unbounded() ? "1" : "0",
                   "ok"});
    }
    return t;
}

CsvTable trace_table(const SimTrace& tr) {
    CsvTable t({"t_s", "tau_d", "tau_out", "tau_c_cmd", "tau_c_app", "v_m", "norm_torque",
                "norm_vel"});
    for (std::size_t i = 0; i < tr.size(); ++i) {
        t.add_row({format_number(tr.t[i]), format_number(tr.tau_d[i]),
                   format_number(tr.tau_out[i]), format_number(tr.tau_c_cmd[i]),
                   format_number(tr.tau_c_app[i]), format_number(tr.v_m[i]),
                   format_number(tr.norm_torque[i]), format_number(tr.norm_vel[i])});
    }
    return t;
}

std::string render_svg(const MttCurve& curve, const std::string& title) {
    constexpr double W = 720, H = 440, L = 70, R = 20, T = 40, B = 60;
    const double pw = W - L - R;
    const double ph = H - T - B;

    double xmin = 1e-2, xmax = 1e3;
    if (!curve.omega.empty()) {
        xmin = curve.omega.front();
        xmax = curve.omega.back();
    }
    double ymin = 1.0, ymax = 1.0;
    for (const auto* series : {&curve.mtt_tau, &curve.mtt_v}) {
        for (double v : *series) {
            if (v > 0.0) {
                ymin = std::min(ymin, v);
                ymax = std::max(ymax, v);
            }
        }
    }
    const double lx0 = std::log10(xmin), lx1 = std::log10(xmax);
    const double ly0 = std::floor(std::log10(ymin)), ly1 = std::ceil(std::log10(ymax));
    const double lyspan = std::max(ly1 - ly0, 1.0);
    auto px = [&](double w) { return L + (std::log10(w) - lx0) / (lx1 - lx0) * pw; };
    auto py = [&](double m) {
        const double lm = std::log10(std::max(m, std::pow(10.0, ly0)));
        return T + (1.0 - (lm - ly0) / lyspan) * ph;
    };
    auto fmt = [](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
        return std::string(buf, res.ptr);
    };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int d = static_cast<int>(std::ceil(lx0)); d <= static_cast<int>(std::floor(lx1)); ++d) {
        const double x = px(std::pow(10.0, d));
        o << "<line x1=\"" << fmt(x) << "\" y1=\"" << T << "\" x2=\"" << fmt(x) << "\" y2=\""
          << T + ph << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << fmt(x) << "\" y=\"" << T + ph + 16
          << "\" text-anchor=\"middle\">1e" << d << "</text>\n";
    }
    for (int d = static_cast<int>(ly0); d <= static_cast<int>(ly0 + lyspan); ++d) {
        const double y = py(std::pow(10.0, d));
        o << "<line x1=\"" << L << "\" y1=\"" << fmt(y) << "\" x2=\"" << L + pw << "\" y2=\""
          << fmt(y) << "\" stroke=\"#ddd\"/>\n";
        o << "<text x=\"" << L - 6 << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">1e" << d
          << "</text>\n";
    }
    o << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 16
      << "\" text-anchor=\"middle\">frequency (rad/s)</text>\n";
    o << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << T + ph / 2 << ")\">MTT magnitude</text>\n";

    const double y1 = py(1.0);
    o << "<line x1=\"" << L << "\" y1=\"" << fmt(y1) << "\" x2=\"" << L + pw << "\" y2=\""
      << fmt(y1) << "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";

    auto polyline = [&](const std::vector<double>& ys, const char* color) {
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < ys.size(); ++i) {
            if (i) o << ' ';
            o << fmt(px(curve.omega[i])) << ',' << fmt(py(ys[i]));
        }
        o << "\"/>\n";
    };
    polyline(curve.mtt_tau, "#c0392b");
    polyline(curve.mtt_v, "#2c5fa8");

    o << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 << "\" fill=\"#c0392b\">MTT_tau</text>\n";
    o << "<text x=\"" << L + 10 << "\" y=\"" << T + 32 << "\" fill=\"#2c5fa8\">MTT_V</text>\n";
    o << "<text x=\"" << L + pw - 6 << "\" y=\"" << fmt(y1 - 4)
      << "\" text-anchor=\"end\">0 dB</text>\n";
    o << "</svg>\n";
    return o.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " +
                                 ec.message());
    }
}

}  // namespace sea
