#include "niouc/sim/dataset.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace niouc::sim {

el::SourceSizes InputDataset::sizes() const {
    el::SourceSizes s;
    s.counts.reserve(sources.size());
    for (const auto& src : sources) s.counts.push_back(static_cast<int>(src.size()));
    return s;
}

void InputDataset::validate() const {
    if (sources.empty()) throw std::invalid_argument("InputDataset: need at least one source");
    for (std::size_t p = 0; p < sources.size(); ++p) {
        if (sources[p].size() < 2)
            throw std::invalid_argument("InputDataset: source " + std::to_string(p + 1) + " needs n_p >= 2");
        for (double x : sources[p])
            if (!std::isfinite(x))
                throw std::invalid_argument("InputDataset: source " + std::to_string(p + 1) +
                                            " contains a non-finite value");
    }
}

InputDataset load_dataset(const std::vector<std::string>& paths) {
    InputDataset ds;
    ds.sources.reserve(paths.size());
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("load_dataset: cannot open " + path);
        std::vector<double> column;
        std::string line;
        bool first = true;
        while (std::getline(in, line)) {
            // Trim trailing CR from Windows-style files.
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            try {
                std::size_t pos = 0;
                const double v = std::stod(line, &pos);
                column.push_back(v);
            } catch (const std::exception&) {
                if (first) {
                    first = false;
                    continue; // header line
                }
                throw std::runtime_error("load_dataset: bad numeric line in " + path + ": " + line);
            }
            first = false;
        }
        ds.sources.push_back(std::move(column));
    }
    ds.validate();
    return ds;
}

} // namespace niouc::sim
