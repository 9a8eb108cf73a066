/** Display helpers; all values arrive pre-computed from the service. */

export function group(n: number): string {
  const sign = n < 0 ? '-' : '';
  const digits = Math.abs(n).toString();
  return sign + digits.replace(/\B(?=(\d{3})+(?!\d))/g, ',');
}

export function percentLabel(roi: string | null): string {
  return roi === null ? '—' : `${roi}%`;
}
