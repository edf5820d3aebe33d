#ifndef GRIDKIT_COMMON_FIELDVECTOR_HH
#define GRIDKIT_COMMON_FIELDVECTOR_HH

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

#include <gridkit/common/exceptions.hh>

namespace gridkit
{

  /** \brief small dense vector with run-time length 0..3
   *
   *  Coordinates in this library never exceed three components, so the
   *  storage is inline. Length 0 is used for local coordinates of vertices.
   */
  class FieldVector
  {
  public:
    static constexpr int maxSize = 3;

    FieldVector () = default;

    explicit FieldVector ( int n, double value = 0.0 )
      : size_( n )
    {
      if( n < 0 || n > maxSize )
        throw DomainError( "FieldVector: length " + std::to_string( n ) + " not in [0,3]" );
      data_.fill( 0.0 );
      std::fill_n( data_.begin(), n, value );
    }

    FieldVector ( std::initializer_list< double > values )
      : FieldVector( std::span< const double >( values.begin(), values.size() ) )
    {}

    explicit FieldVector ( std::span< const double > values )
      : size_( static_cast< int >( values.size() ) )
    {
      if( values.size() > maxSize )
        throw DomainError( "FieldVector: length " + std::to_string( values.size() ) + " not in [0,3]" );
      data_.fill( 0.0 );
      std::copy( values.begin(), values.end(), data_.begin() );
    }

    int size () const noexcept { return size_; }

    double &operator[] ( int i ) { assert( i >= 0 && i < size_ ); return data_[ i ]; }
    double operator[] ( int i ) const { assert( i >= 0 && i < size_ ); return data_[ i ]; }

    const double *begin () const noexcept { return data_.data(); }
    const double *end () const noexcept { return data_.data() + size_; }
    double *begin () noexcept { return data_.data(); }
    double *end () noexcept { return data_.data() + size_; }

    std::span< const double > values () const noexcept { return { data_.data(), std::size_t( size_ ) }; }

    FieldVector &operator+= ( const FieldVector &o ) { checkSize( o ); for( int i = 0; i < size_; ++i ) data_[ i ] += o.data_[ i ]; return *this; }
    FieldVector &operator-= ( const FieldVector &o ) { checkSize( o ); for( int i = 0; i < size_; ++i ) data_[ i ] -= o.data_[ i ]; return *this; }
    FieldVector &operator*= ( double s ) { for( int i = 0; i < size_; ++i ) data_[ i ] *= s; return *this; }
    FieldVector &operator/= ( double s ) { for( int i = 0; i < size_; ++i ) data_[ i ] /= s; return *this; }

    //! this += s * o
    FieldVector &axpy ( double s, const FieldVector &o ) { checkSize( o ); for( int i = 0; i < size_; ++i ) data_[ i ] += s * o.data_[ i ]; return *this; }

    double dot ( const FieldVector &o ) const
    {
      checkSize( o );
      double r = 0.0;
      for( int i = 0; i < size_; ++i )
        r += data_[ i ] * o.data_[ i ];
      return r;
    }

    double two_norm2 () const { return dot( *this ); }
    double two_norm () const { return std::sqrt( two_norm2() ); }

    friend FieldVector operator+ ( FieldVector a, const FieldVector &b ) { return a += b; }
    friend FieldVector operator- ( FieldVector a, const FieldVector &b ) { return a -= b; }
    friend FieldVector operator- ( FieldVector a ) { return a *= -1.0; }
    friend FieldVector operator* ( double s, FieldVector a ) { return a *= s; }
    friend FieldVector operator* ( FieldVector a, double s ) { return a *= s; }
    friend FieldVector operator/ ( FieldVector a, double s ) { return a /= s; }

    friend bool operator== ( const FieldVector &a, const FieldVector &b )
    {
      return a.size_ == b.size_ && std::equal( a.begin(), a.end(), b.begin() );
    }

    //! formatted like the reference output: "(0.000000, 1.000000)"
    friend std::ostream &operator<< ( std::ostream &out, const FieldVector &v )
    {
      out << '(';
      char buf[ 32 ];
      for( int i = 0; i < v.size_; ++i )
      {
        std::snprintf( buf, sizeof( buf ), "%f", v.data_[ i ] );
        out << ( i > 0 ? ", " : "" ) << buf;
      }
      return out << ')';
    }

  private:
    void checkSize ( const FieldVector &o ) const
    {
      if( o.size_ != size_ )
        throw DomainError( "FieldVector: size mismatch (" + std::to_string( size_ ) + " vs " + std::to_string( o.size_ ) + ")" );
    }

    std::array< double, maxSize > data_{};
    int size_ = 0;
  };

  inline std::string toString ( const FieldVector &v )
  {
    std::string s = "(";
    char buf[ 32 ];
    for( int i = 0; i < v.size(); ++i )
    {
      std::snprintf( buf, sizeof( buf ), "%f", v[ i ] );
      s += ( i > 0 ? ", " : "" );
      s += buf;
    }
    return s + ")";
  }



  /** \brief small dense matrix, at most 3x3 */
  class FieldMatrix
  {
  public:
    FieldMatrix () = default;

    FieldMatrix ( int rows, int cols, double value = 0.0 )
      : rows_( rows ), cols_( cols )
    {
      if( rows < 0 || rows > 3 || cols < 0 || cols > 3 )
        throw DomainError( "FieldMatrix: shape out of range" );
      data_.fill( value );
    }

    static FieldMatrix identity ( int n )
    {
      FieldMatrix m( n, n );
      for( int i = 0; i < n; ++i )
        m( i, i ) = 1.0;
      return m;
    }

    int rows () const noexcept { return rows_; }
    int cols () const noexcept { return cols_; }

    double &operator() ( int i, int j ) { assert( i < rows_ && j < cols_ ); return data_[ 3*i + j ]; }
    double operator() ( int i, int j ) const { assert( i < rows_ && j < cols_ ); return data_[ 3*i + j ]; }

    FieldVector row ( int i ) const
    {
      FieldVector r( cols_ );
      for( int j = 0; j < cols_; ++j )
        r[ j ] = (*this)( i, j );
      return r;
    }

    void setRow ( int i, const FieldVector &r )
    {
      if( r.size() != cols_ )
        throw DomainError( "FieldMatrix: row length mismatch" );
      for( int j = 0; j < cols_; ++j )
        (*this)( i, j ) = r[ j ];
    }

    FieldMatrix transposed () const
    {
      FieldMatrix t( cols_, rows_ );
      for( int i = 0; i < rows_; ++i )
        for( int j = 0; j < cols_; ++j )
          t( j, i ) = (*this)( i, j );
      return t;
    }

    //! y = A x
    FieldVector mv ( const FieldVector &x ) const
    {
      if( x.size() != cols_ )
        throw DomainError( "FieldMatrix::mv: size mismatch" );
      FieldVector y( rows_ );
      for( int i = 0; i < rows_; ++i )
        for( int j = 0; j < cols_; ++j )
          y[ i ] += (*this)( i, j ) * x[ j ];
      return y;
    }

    //! y = A^T x
    FieldVector mtv ( const FieldVector &x ) const
    {
      if( x.size() != rows_ )
        throw DomainError( "FieldMatrix::mtv: size mismatch" );
      FieldVector y( cols_ );
      for( int i = 0; i < rows_; ++i )
        for( int j = 0; j < cols_; ++j )
          y[ j ] += (*this)( i, j ) * x[ i ];
      return y;
    }

    friend FieldMatrix operator* ( const FieldMatrix &a, const FieldMatrix &b )
    {
      if( a.cols_ != b.rows_ )
        throw DomainError( "FieldMatrix: product shape mismatch" );
      FieldMatrix c( a.rows_, b.cols_ );
      for( int i = 0; i < a.rows_; ++i )
        for( int j = 0; j < b.cols_; ++j )
          for( int k = 0; k < a.cols_; ++k )
            c( i, j ) += a( i, k ) * b( k, j );
      return c;
    }

    //! determinant of a square matrix (n <= 3)
    double determinant () const
    {
      if( rows_ != cols_ )
        throw DomainError( "FieldMatrix::determinant: matrix not square" );
      const auto &m = *this;
      switch( rows_ )
      {
      case 0: return 1.0;
      case 1: return m( 0, 0 );
      case 2: return m( 0, 0 )*m( 1, 1 ) - m( 0, 1 )*m( 1, 0 );
      default:
        return m( 0, 0 )*( m( 1, 1 )*m( 2, 2 ) - m( 1, 2 )*m( 2, 1 ) )
             - m( 0, 1 )*( m( 1, 0 )*m( 2, 2 ) - m( 1, 2 )*m( 2, 0 ) )
             + m( 0, 2 )*( m( 1, 0 )*m( 2, 1 ) - m( 1, 1 )*m( 2, 0 ) );
      }
    }

    //! inverse of a square matrix via the adjugate; throws NumericError when singular
    FieldMatrix inverse () const
    {
      const double det = determinant();
      if( det == 0.0 || !std::isfinite( det ) )
        throw NumericError( "FieldMatrix::inverse: singular matrix" );
      const auto &m = *this;
      FieldMatrix r( rows_, cols_ );
      switch( rows_ )
      {
      case 0: break;
      case 1: r( 0, 0 ) = 1.0 / det; break;
      case 2:
        r( 0, 0 ) = m( 1, 1 ) / det;  r( 0, 1 ) = -m( 0, 1 ) / det;
        r( 1, 0 ) = -m( 1, 0 ) / det; r( 1, 1 ) = m( 0, 0 ) / det;
        break;
      default:
        for( int i = 0; i < 3; ++i )
          for( int j = 0; j < 3; ++j )
          {
            const int i1 = ( j + 1 ) % 3, i2 = ( j + 2 ) % 3;
            const int j1 = ( i + 1 ) % 3, j2 = ( i + 2 ) % 3;
            r( i, j ) = ( m( i1, j1 )*m( i2, j2 ) - m( i1, j2 )*m( i2, j1 ) ) / det;
          }
      }
      return r;
    }

  private:
    std::array< double, 9 > data_{};
    int rows_ = 0;
    int cols_ = 0;
  };

} // namespace gridkit

#endif // GRIDKIT_COMMON_FIELDVECTOR_HH
