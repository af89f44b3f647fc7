/*
 * Copyright 2026 The srt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#include "srt/report.hpp"

#include <sstream>

#include "srt/dataset.hpp"

namespace srt {

namespace {

void write_reals(std::ostream& out, const std::vector<double>& values) {
    for (double v : values) out << ' ' << format_real(v);
}

} // namespace

std::vector<TrainingReport> summarize(const SrfModel& model) {
    std::vector<TrainingReport> out;
    out.reserve(model.trees.size());
    for (const auto& t : model.trees) out.push_back(summarize(t));
    return out;
}

std::string format_insufficient_regions(const std::vector<TrainingReport>& reports) {
    std::ostringstream out;
    std::size_t total = 0;
    for (const auto& r : reports) total += r.insufficient_regions.size();
    out << "# insufficient-data report\n";
    out << "trees " << reports.size() << " regions " << total << '\n';
    for (std::size_t t = 0; t < reports.size(); ++t) {
        const auto& regions = reports[t].insufficient_regions;
        for (std::size_t i = 0; i < regions.size(); ++i) {
            const auto& reg = regions[i];
            out << "region " << t << ' ' << i << " status " << to_string(reg.status) << " n_points " << reg.n_points
                << " residual_rae " << format_real(reg.residual_rae) << '\n';
            out << "  box_lo";
            write_reals(out, reg.box_lo);
            out << "\n  box_hi";
            write_reals(out, reg.box_hi);
            out << '\n';
            for (const auto& [plane, side] : reg.path) {
                out << "  constraint";
                write_reals(out, plane.normal);
                out << (side == 0 ? " <= " : " > ") << format_real(plane.threshold) << '\n';
            }
        }
    }
    return out.str();
}

std::string format_training_report(const std::vector<TrainingReport>& reports) {
    std::ostringstream out;
    out << format_insufficient_regions(reports);
    out << "# nodes (depth-first)\n";
    for (std::size_t t = 0; t < reports.size(); ++t) {
        const auto& rep = reports[t];
        out << "tree " << t << " nodes " << rep.nodes.size() << " point_visits " << rep.point_visits << " seconds "
            << format_real(rep.seconds) << '\n';
        for (const auto& n : rep.nodes) {
            out << "node depth " << n.depth << " n_points " << n.n_points << " n_centers " << n.n_centers
                << " status " << to_string(n.status) << " stop " << to_string(n.stop_reason) << " kappa "
                << format_real(n.kappa) << " n_bar_c " << format_real(n.n_bar_c) << " eps";
            write_reals(out, n.eps_trail);
            out << '\n';
        }
    }
    return out.str();
}

} // namespace srt
