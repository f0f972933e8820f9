// Prints Eve's two information bounds over a logarithmic mu grid as CSV.

#include <iostream>
#include <vector>

#include "qta/eve_info.hpp"
#include "qta/serialization.hpp"

int main() {
    std::vector<double> grid;
    for (double mu = 1e-3; mu <= 10.0; mu *= 1.2) grid.push_back(mu);
    std::cout << qta::info_sweep_to_csv(qta::info_gain_sweep(grid));
    return 0;
}
