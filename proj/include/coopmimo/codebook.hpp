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


#ifndef COOPMIMO_CODEBOOK_HPP
#define COOPMIMO_CODEBOOK_HPP

#include "decoding_matrix.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "precoding.hpp"
#include "random.hpp"
#include "types.hpp"

#include <json.hpp>

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopmimo
{
    inline constexpr std::size_t default_codebook_memory_budget = std::size_t{1} << 30; // bytes

    class decoding_codebook
    {
    public:
        decoding_codebook(unsigned bits, std::vector<decoding_matrix> codewords)
            : bits_(bits), codewords_(std::move(codewords))
        {
            if (bits >= 63 || codewords_.size() != (std::size_t{1} << bits))
                throw std::invalid_argument("decoding_codebook: need exactly 2^b codewords");
            for (const auto &c : codewords_)
                if (c.users() != codewords_.front().users())
                    throw std::invalid_argument("decoding_codebook: codewords differ in size");
        }

        unsigned bits() const noexcept { return bits_; }
        std::size_t size() const noexcept { return codewords_.size(); }
        std::size_t users() const noexcept { return codewords_.front().users(); }
        const decoding_matrix &operator[](std::size_t i) const { return codewords_.at(i); }
        std::span<const decoding_matrix> codewords() const noexcept { return codewords_; }

        /// First 2^b codewords. Generation is sequential, so this is exactly the
        /// codebook a b-bit generation with the same seed would produce.
        std::span<const decoding_matrix> prefix(unsigned b) const
        {
            if (b > bits_)
                throw std::invalid_argument("decoding_codebook: prefix larger than codebook");
            return std::span<const decoding_matrix>(codewords_).first(std::size_t{1} << b);
        }

    private:
        unsigned bits_;
        std::vector<decoding_matrix> codewords_;
    };

    inline std::size_t codebook_bytes(std::size_t users, unsigned bits)
    {
        return (std::size_t{1} << bits) * users * users * sizeof(cx);
    }

    /// Random unitary codebook: each codeword is the eigenvector matrix of
    /// G G^H for a fresh P x P standard complex Gaussian G.
    inline decoding_codebook generate_codebook(std::size_t users, unsigned bits, rng_type &rng,
                                               std::size_t memory_budget = default_codebook_memory_budget)
    {
        if (users == 0)
            throw std::invalid_argument("generate_codebook: need at least one user");
        if (bits >= 48 || codebook_bytes(users, bits) > memory_budget)
            throw resource_limit("generate_codebook: 2^" + std::to_string(bits) +
                                 " codewords exceed the memory budget");
        const auto n = static_cast<Eigen::Index>(users);
        std::vector<decoding_matrix> words;
        words.reserve(std::size_t{1} << bits);
        for (std::size_t k = 0; k < (std::size_t{1} << bits); ++k)
        {
            const CMatrix g = complex_gaussian_matrix(rng, n, n);
            words.emplace_back(eigh(g * g.adjoint()).vectors);
        }
        return decoding_codebook(bits, std::move(words));
    }

    /// (1/(N0 P)) sum_p 1/(q_p^H A^{-1} q_p)
    inline double average_snr(const gram_inverse &g, const decoding_matrix &q, double n0)
    {
        check_noise_power(n0);
        detail::check_compatible(g, q);
        double sum = 0.0;
        for (std::size_t p = 0; p < q.users(); ++p)
            sum += 1.0 / g.quadratic_form(q.column(p));
        return sum / (n0 * static_cast<double>(q.users()));
    }

    inline double average_snr(const effective_channel &he, const decoding_matrix &q, double n0)
    {
        return average_snr(gram_inverse(he), q, n0);
    }

    /// Noise-free selection metric sum_p 1/(q_p^H A^{-1} q_p) of every codeword.
    /// The argmax does not depend on N0.
    inline std::vector<double> codeword_scores(std::span<const decoding_matrix> words, const gram_inverse &g)
    {
        std::vector<double> out;
        out.reserve(words.size());
        for (const auto &q : words)
        {
            detail::check_compatible(g, q);
            const CMatrix t = g.inverse * q.matrix();
            double s = 0.0;
            for (Eigen::Index p = 0; p < t.cols(); ++p)
                s += 1.0 / q.matrix().col(p).dot(t.col(p)).real();
            out.push_back(s);
        }
        return out;
    }

    struct codeword_selection
    {
        std::size_t index;
        const decoding_matrix *codeword;
        double average_snr;
    };

    // Ties go to the lowest index.
    inline codeword_selection select_codeword(std::span<const decoding_matrix> words, const gram_inverse &g,
                                              double n0)
    {
        check_noise_power(n0);
        if (words.empty())
            throw std::invalid_argument("select_codeword: empty codebook");
        const auto scores = codeword_scores(words, g);
        std::size_t best = 0;
        for (std::size_t k = 1; k < scores.size(); ++k)
            if (scores[k] > scores[best])
                best = k;
        return {best, &words[best], scores[best] / (n0 * static_cast<double>(g.users()))};
    }

    inline codeword_selection select_codeword(const decoding_codebook &book, const effective_channel &he, double n0)
    {
        return select_codeword(book.codewords(), gram_inverse(he), n0);
    }

    // ---- Serialization ---------------------------------------------------
    // JSON: {"users": P, "bits": b, "codewords": [[re, im, re, im, ...], ...]},
    // each codeword row-major. Binary: "CBK1", u32 P, u32 b, then the same
    // row-major (re, im) pairs as little-endian IEEE-754 doubles.

    inline nlohmann::json codebook_to_json(const decoding_codebook &book)
    {
        nlohmann::json words = nlohmann::json::array();
        for (const auto &q : book.codewords())
        {
            std::vector<double> flat;
            flat.reserve(2 * q.users() * q.users());
            for (Eigen::Index r = 0; r < q.matrix().rows(); ++r)
                for (Eigen::Index c = 0; c < q.matrix().cols(); ++c)
                {
                    flat.push_back(q.matrix()(r, c).real());
                    flat.push_back(q.matrix()(r, c).imag());
                }
            words.push_back(std::move(flat));
        }
        return {{"users", book.users()}, {"bits", book.bits()}, {"codewords", std::move(words)}};
    }

    namespace detail
    {
        inline CMatrix unflatten_row_major(const double *data, std::size_t users)
        {
            const auto n = static_cast<Eigen::Index>(users);
            CMatrix q(n, n);
            for (Eigen::Index r = 0; r < n; ++r)
                for (Eigen::Index c = 0; c < n; ++c)
                {
                    const std::size_t k = 2 * static_cast<std::size_t>(r * n + c);
                    q(r, c) = cx(data[k], data[k + 1]);
                }
            return q;
        }
    }

    inline decoding_codebook codebook_from_json(const nlohmann::json &j)
    {
        const auto users = j.at("users").get<std::size_t>();
        const auto bits = j.at("bits").get<unsigned>();
        if (users == 0 || bits >= 48)
            throw std::invalid_argument("codebook_from_json: bad header");
        std::vector<decoding_matrix> words;
        for (const auto &w : j.at("codewords"))
        {
            const auto flat = w.get<std::vector<double>>();
            if (flat.size() != 2 * users * users)
                throw std::invalid_argument("codebook_from_json: codeword has wrong length");
            words.emplace_back(detail::unflatten_row_major(flat.data(), users));
        }
        return decoding_codebook(bits, std::move(words));
    }

    inline void save_codebook_binary(const decoding_codebook &book, const std::string &path)
    {
        static_assert(std::endian::native == std::endian::little, "binary codebook I/O assumes little-endian");
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw std::runtime_error("save_codebook_binary: cannot open " + path);
        const std::uint32_t header[2] = {static_cast<std::uint32_t>(book.users()), book.bits()};
        out.write("CBK1", 4);
        out.write(reinterpret_cast<const char *>(header), sizeof(header));
        for (const auto &q : book.codewords())
            for (Eigen::Index r = 0; r < q.matrix().rows(); ++r)
                for (Eigen::Index c = 0; c < q.matrix().cols(); ++c)
                {
                    const double pair[2] = {q.matrix()(r, c).real(), q.matrix()(r, c).imag()};
                    out.write(reinterpret_cast<const char *>(pair), sizeof(pair));
                }
        if (!out)
            throw std::runtime_error("save_codebook_binary: write failed for " + path);
    }

    inline decoding_codebook load_codebook_binary(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw std::runtime_error("load_codebook_binary: cannot open " + path);
        char magic[4];
        std::uint32_t header[2];
        in.read(magic, 4);
        in.read(reinterpret_cast<char *>(header), sizeof(header));
        if (!in || std::memcmp(magic, "CBK1", 4) != 0 || header[0] == 0 || header[1] >= 48)
            throw std::runtime_error("load_codebook_binary: bad header in " + path);
        const std::size_t users = header[0];
        std::vector<double> buf(2 * users * users);
        std::vector<decoding_matrix> words;
        for (std::size_t k = 0; k < (std::size_t{1} << header[1]); ++k)
        {
            in.read(reinterpret_cast<char *>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
            if (!in)
                throw std::runtime_error("load_codebook_binary: truncated file " + path);
            words.emplace_back(detail::unflatten_row_major(buf.data(), users));
        }
        return decoding_codebook(header[1], std::move(words));
    }
}

#endif
