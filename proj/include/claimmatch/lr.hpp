#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace claimmatch {

inline double sigmoid(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

// log(1 + exp(z)) without overflow
inline double log1pexp(double z) {
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

// L2-regularized mean negative log-likelihood. The bias is not penalized.
//   loss = (1/n) sum_i [log(1+e^{z_i}) - y_i z_i] + (l2/2) ||w||^2
inline double lr_loss(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                      const std::vector<double>& w, double bias, double l2) {
    const size_t n = x.size();
    double loss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double z = bias;
        for (size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        loss += log1pexp(z) - (y[i] ? z : 0.0);
    }
    loss /= static_cast<double>(n);
    double reg = 0.0;
    for (double wj : w) reg += wj * wj;
    return loss + 0.5 * l2 * reg;
}

inline void lr_gradient(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                        const std::vector<double>& w, double bias, double l2,
                        std::vector<double>& grad_w, double& grad_b) {
    const size_t n = x.size();
    grad_w.assign(w.size(), 0.0);
    grad_b = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double z = bias;
        for (size_t j = 0; j < w.size(); ++j) z += w[j] * x[i][j];
        double err = sigmoid(z) - (y[i] ? 1.0 : 0.0);
        for (size_t j = 0; j < w.size(); ++j) grad_w[j] += err * x[i][j];
        grad_b += err;
    }
    for (size_t j = 0; j < w.size(); ++j)
        grad_w[j] = grad_w[j] / static_cast<double>(n) + l2 * w[j];
    grad_b /= static_cast<double>(n);
}

struct LrFit {
    std::vector<double> weights;
    double bias = 0.0;
    int iterations = 0;
    double final_loss = 0.0;
    bool converged = false;
};

// Full-batch gradient descent with backtracking line search, from a zero
// start. Deterministic for fixed inputs.
inline LrFit lr_fit(const std::vector<std::vector<double>>& x, const std::vector<int>& y,
                    double l2, double tol = 1e-7, int max_iter = 5000) {
    if (x.empty() || x.size() != y.size())
        throw std::runtime_error("lr_fit: empty or mismatched training data");
    const size_t dim = x[0].size();
    bool has_pos = false, has_neg = false;
    for (int yi : y) (yi ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg)
        throw std::runtime_error("lr_fit: training data contains a single class");

    LrFit fit;
    fit.weights.assign(dim, 0.0);
    double loss = lr_loss(x, y, fit.weights, fit.bias, l2);
    std::vector<double> grad(dim);
    double grad_b = 0.0;
    std::vector<double> trial(dim);

    for (int it = 0; it < max_iter; ++it) {
        lr_gradient(x, y, fit.weights, fit.bias, l2, grad, grad_b);
        double gmax = std::abs(grad_b), gsq = grad_b * grad_b;
        for (double g : grad) {
            gmax = std::max(gmax, std::abs(g));
            gsq += g * g;
        }
        fit.iterations = it;
        if (gmax < tol) {
            fit.converged = true;
            break;
        }
        // Armijo backtracking
        double step = 1.0;
        for (int bt = 0; bt < 60; ++bt) {
            for (size_t j = 0; j < dim; ++j) trial[j] = fit.weights[j] - step * grad[j];
            double trial_b = fit.bias - step * grad_b;
            double trial_loss = lr_loss(x, y, trial, trial_b, l2);
            if (trial_loss <= loss - 1e-4 * step * gsq) {
                fit.weights = trial;
                fit.bias = trial_b;
                loss = trial_loss;
                break;
            }
            step *= 0.5;
            if (bt == 59) {
                fit.converged = true;  // no further progress representable
                fit.final_loss = loss;
                return fit;
            }
        }
    }
    fit.final_loss = loss;
    return fit;
}

}  // namespace claimmatch
