#ifndef GRIDKIT_SCHEMES_SPARSE_HH
#define GRIDKIT_SCHEMES_SPARSE_HH

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  /** \brief sparse matrix assembled from triplets
   *
   *  Entries are collected with add() and compressed into row storage by
   *  finalize(); duplicate entries are summed.
   */
  class SparseMatrix
  {
  public:
    SparseMatrix () = default;

    SparseMatrix ( int rows, int cols )
      : rows_( rows ), cols_( cols )
    {
      if( rows < 0 || cols < 0 )
        throw DomainError( "SparseMatrix: negative size" );
    }

    int rows () const noexcept { return rows_; }
    int cols () const noexcept { return cols_; }
    bool finalized () const noexcept { return finalized_; }

    void add ( int i, int j, double value )
    {
      if( finalized_ )
        throw StateError( "SparseMatrix: add after finalize" );
      if( i < 0 || i >= rows_ || j < 0 || j >= cols_ )
        throw DomainError( "SparseMatrix: entry (" + std::to_string( i ) + ", " + std::to_string( j ) + ") out of range" );
      triplets_.emplace_back( i, j, value );
    }

    void finalize ()
    {
      if( finalized_ )
        return;
      std::sort( triplets_.begin(), triplets_.end(), [] ( const auto &a, const auto &b ) {
        return std::tie( std::get< 0 >( a ), std::get< 1 >( a ) ) < std::tie( std::get< 0 >( b ), std::get< 1 >( b ) );
      } );
      rowPtr_.assign( rows_ + 1, 0 );
      int lastRow = -1;
      for( const auto &[ i, j, v ] : triplets_ )
      {
        if( !colIdx_.empty() && lastRow == i && colIdx_.back() == j )
        {
          values_.back() += v;
          continue;
        }
        colIdx_.push_back( j );
        values_.push_back( v );
        ++rowPtr_[ i + 1 ];
        lastRow = i;
      }
      for( int i = 0; i < rows_; ++i )
        rowPtr_[ i + 1 ] += rowPtr_[ i ];
      triplets_.clear();
      triplets_.shrink_to_fit();
      finalized_ = true;
    }

    std::size_t nonZeros () const { return finalized_ ? values_.size() : triplets_.size(); }

    //! entry (i, j); zero if not stored
    double operator() ( int i, int j ) const
    {
      check();
      const auto begin = colIdx_.begin() + rowPtr_[ i ], end = colIdx_.begin() + rowPtr_[ i + 1 ];
      auto it = std::lower_bound( begin, end, j );
      return ( it != end && *it == j ) ? values_[ it - colIdx_.begin() ] : 0.0;
    }

    std::vector< double > mv ( std::span< const double > x ) const
    {
      check();
      if( static_cast< int >( x.size() ) != cols_ )
        throw ShapeError( "SparseMatrix::mv: vector length " + std::to_string( x.size() ) + ", expected " + std::to_string( cols_ ) );
      std::vector< double > y( rows_, 0.0 );
      for( int i = 0; i < rows_; ++i )
        for( int k = rowPtr_[ i ]; k < rowPtr_[ i + 1 ]; ++k )
          y[ i ] += values_[ k ] * x[ colIdx_[ k ] ];
      return y;
    }

    const std::vector< int > &rowPointers () const { check(); return rowPtr_; }
    const std::vector< int > &columnIndices () const { check(); return colIdx_; }
    const std::vector< double > &values () const { check(); return values_; }
    std::vector< double > &values () { check(); return values_; }

    //! max |A - A^T| over stored entries
    double asymmetry () const
    {
      double result = 0.0;
      for( int i = 0; i < rows_; ++i )
        for( int k = rowPtr_[ i ]; k < rowPtr_[ i + 1 ]; ++k )
          result = std::max( result, std::abs( values_[ k ] - ( *this )( colIdx_[ k ], i ) ) );
      return result;
    }

  private:
    void check () const
    {
      if( !finalized_ )
        throw StateError( "SparseMatrix: not finalized" );
    }

    int rows_ = 0, cols_ = 0;
    bool finalized_ = false;
    std::vector< std::tuple< int, int, double > > triplets_;
    std::vector< int > rowPtr_, colIdx_;
    std::vector< double > values_;
  };

} // namespace gridkit

#endif // GRIDKIT_SCHEMES_SPARSE_HH
