#pragma once

#include <string>
#include <vector>

#include "mtco/instance.hpp"
#include "mtco/io.hpp"
#include "mtco/matrix.hpp"
#include "mtco/permutation.hpp"
#include "oracles.hpp"

namespace testing {

inline mtco::Matrix to_matrix(const oracle::Grid& g) { return mtco::Matrix::from_rows(g); }

inline oracle::Grid to_grid(const mtco::Matrix& m) {
    oracle::Grid g(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) g[i][j] = m(i, j);
    return g;
}

inline mtco::Instance random_instance(std::mt19937_64& g, std::size_t n, std::size_t m) {
    return mtco::Instance(to_matrix(oracle::random_grid(g, n, m)));
}

inline std::vector<int> jobs_of(const mtco::Permutation& p) { return {p.jobs().begin(), p.jobs().end()}; }

inline std::string taillard_path(int k) {
    char name[32];
    std::snprintf(name, sizeof name, "ta%03d.txt", k);
    return std::string(MTCO_TEST_DATA_DIR) + "/taillard/" + name;
}

inline mtco::Instance taillard(int k) { return mtco::load_taillard(taillard_path(k)); }

}  // namespace testing
