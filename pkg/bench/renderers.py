from motivic.cyclotomic import CyclotomicNumber


def render_value(value):
    """Точное значение и его приближение"""
    if isinstance(value, CyclotomicNumber):
        if value.is_rational():
            return str(value.to_fraction())
        z = value.to_complex()
        if abs(z.imag) < 1e-12:
            return f"{value}  ≈ {z.real:.10g}"
        return f"{value}  ≈ {z.real:.10g}{z.imag:+.10g}i"
    return str(value)


def render_table(headers, rows):
    """Таблица с выровненными столбцами"""
    table = [[str(h) for h in headers]] + [['' if c is None else str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = ['  '.join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table]
    lines.insert(1, '  '.join('-' * w for w in widths))
    return '\n'.join(lines)


def render_verdict(ok):
    if ok is None:
        return '-'
    return 'да' if ok else 'НЕТ'
