// SPDX-License-Identifier: Apache-2.0
//
// coopmimo - cascaded precoding with D2D receiver cooperation
// Copyright (C) 2026 The coopmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef COOPMIMO_LINALG_HPP
#define COOPMIMO_LINALG_HPP

#include "types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iterator>
#include <stdexcept>
#include <vector>

namespace coopmimo
{
    struct hermitian_eigen
    {
        RVector values;  // descending
        CMatrix vectors; // column k belongs to values[k]
    };

    // Largest absolute entrywise deviation from Hermitian symmetry.
    inline double hermitian_defect(const CMatrix &a)
    {
        if (a.rows() != a.cols())
            return std::numeric_limits<double>::infinity();
        return (a - a.adjoint()).cwiseAbs().maxCoeff();
    }

    inline double unitary_defect(const CMatrix &q)
    {
        return (q.adjoint() * q - CMatrix::Identity(q.cols(), q.cols())).norm();
    }

    /// Rotate the global phase of v so that its largest-magnitude entry is
    /// real and positive. Among entries within 1e-12 (relative) of the largest
    /// magnitude, the lowest index wins.
    inline void canonicalize_phase(Eigen::Ref<CVector> v)
    {
        if (v.size() == 0)
            return;
        const double peak = v.cwiseAbs().maxCoeff();
        if (peak == 0.0)
            return;
        Eigen::Index pivot = 0;
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (std::abs(v[i]) >= peak * (1.0 - 1e-12))
            {
                pivot = i;
                break;
            }
        const cx rot = std::conj(v[pivot]) / std::abs(v[pivot]);
        v *= rot;
        v[pivot] = cx(std::abs(v[pivot]), 0.0);
    }

    namespace detail
    {
        inline bool lexicographic_less(const CVector &a, const CVector &b)
        {
            for (Eigen::Index i = 0; i < a.size(); ++i)
            {
                if (a[i].real() != b[i].real())
                    return a[i].real() < b[i].real();
                if (a[i].imag() != b[i].imag())
                    return a[i].imag() < b[i].imag();
            }
            return false;
        }
    }

    /// Eigendecomposition of a Hermitian matrix with a deterministic output
    /// convention: eigenvalues descending, each eigenvector phase-canonicalized,
    /// and eigenvalues equal within 1e-9 (relative to the spectral radius)
    /// ordered by the lexicographic order of their canonical eigenvectors.
    inline hermitian_eigen eigh(const CMatrix &a)
    {
        if (a.rows() != a.cols())
            throw std::invalid_argument("eigh: matrix must be square");
        const Eigen::Index n = a.rows();
        const CMatrix sym = 0.5 * (a + a.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("eigh: eigensolver failed to converge");

        CMatrix vecs = solver.eigenvectors();
        for (Eigen::Index k = 0; k < n; ++k)
            canonicalize_phase(vecs.col(k));

        const RVector &vals = solver.eigenvalues();
        const double scale = std::max(vals.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());

        // Eigen returns ascending order; walk it backwards, then reorder each
        // run of near-equal eigenvalues by canonical eigenvector.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        for (Eigen::Index k = 0; k < n; ++k)
            order[static_cast<std::size_t>(k)] = n - 1 - k;
        auto run_begin = order.begin();
        while (run_begin != order.end())
        {
            auto run_end = std::next(run_begin);
            while (run_end != order.end() && std::abs(vals[*std::prev(run_end)] - vals[*run_end]) <= 1e-9 * scale)
                ++run_end;
            std::sort(run_begin, run_end, [&](Eigen::Index x, Eigen::Index y) {
                return detail::lexicographic_less(vecs.col(x), vecs.col(y));
            });
            run_begin = run_end;
        }

        hermitian_eigen out{RVector(n), CMatrix(n, n)};
        for (Eigen::Index k = 0; k < n; ++k)
        {
            out.values[k] = vals[order[static_cast<std::size_t>(k)]];
            out.vectors.col(k) = vecs.col(order[static_cast<std::size_t>(k)]);
        }
        return out;
    }
}

#endif
