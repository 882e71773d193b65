// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <new>
#include <utility>

namespace lamina
{
    /// Owning, zero-initialized byte buffer. Allocated at cache-line
    /// alignment so typed access and benchmark comparisons are layout-fair.
    /// Zero-size blobs are legal and hold no allocation.
    class Blob
    {
    public:
        static constexpr std::size_t alignment = 64;

        Blob() noexcept = default;

        explicit Blob(std::size_t size) : size_(size)
        {
            if(size_ > 0)
            {
                data_ = static_cast<std::byte*>(::operator new(size_, std::align_val_t{alignment}));
                std::memset(data_, 0, size_);
            }
        }

        Blob(Blob&& other) noexcept : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0))
        {
        }

        Blob& operator=(Blob&& other) noexcept
        {
            if(this != &other)
            {
                release();
                data_ = std::exchange(other.data_, nullptr);
                size_ = std::exchange(other.size_, 0);
            }
            return *this;
        }

        Blob(const Blob&) = delete;
        Blob& operator=(const Blob&) = delete;

        ~Blob()
        {
            release();
        }

        std::byte* data() noexcept
        {
            return data_;
        }

        const std::byte* data() const noexcept
        {
            return data_;
        }

        std::size_t size() const noexcept
        {
            return size_;
        }

        std::byte& operator[](std::size_t i) noexcept
        {
            return data_[i];
        }

        std::byte operator[](std::size_t i) const noexcept
        {
            return data_[i];
        }

    private:
        void release() noexcept
        {
            if(data_ != nullptr)
                ::operator delete(data_, std::align_val_t{alignment});
        }

        std::byte* data_ = nullptr;
        std::size_t size_ = 0;
    };
} // namespace lamina
