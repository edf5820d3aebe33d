#ifndef GRIDKIT_COMMON_ARRAY2_HH
#define GRIDKIT_COMMON_ARRAY2_HH

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  /** \brief row-major rows x cols array of doubles
   *
   *  Used for batched values: one row per evaluation point.
   */
  class Array2
  {
  public:
    Array2 () = default;

    Array2 ( std::size_t rows, std::size_t cols, double value = 0.0 )
      : rows_( rows ), cols_( cols ), data_( rows * cols, value )
    {}

    Array2 ( std::size_t rows, std::size_t cols, std::vector< double > data )
      : rows_( rows ), cols_( cols ), data_( std::move( data ) )
    {
      if( data_.size() != rows_ * cols_ )
        throw ShapeError( "Array2: expected " + std::to_string( rows_ * cols_ ) + " values, got " + std::to_string( data_.size() ) );
    }

    std::size_t rows () const noexcept { return rows_; }
    std::size_t cols () const noexcept { return cols_; }
    bool empty () const noexcept { return data_.empty(); }

    double &operator() ( std::size_t i, std::size_t j ) { return data_[ i*cols_ + j ]; }
    double operator() ( std::size_t i, std::size_t j ) const { return data_[ i*cols_ + j ]; }

    std::span< const double > row ( std::size_t i ) const { return { data_.data() + i*cols_, cols_ }; }
    std::span< double > row ( std::size_t i ) { return { data_.data() + i*cols_, cols_ }; }

    const std::vector< double > &data () const noexcept { return data_; }
    std::vector< double > &data () noexcept { return data_; }

    friend bool operator== ( const Array2 &, const Array2 & ) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector< double > data_;
  };

} // namespace gridkit

#endif // GRIDKIT_COMMON_ARRAY2_HH
