import type { SessionState } from "./controller.js";
import type { Annotation, Candidate } from "./types.js";

export interface ViewCallbacks {
  onTokenClick(index: number): void;
  onConfirm(): void;
  onSave(): void;
  onNext(): void;
  onPrev(): void;
  onFilter(value: string): void;
  onRetry(): void;
  onDismiss(): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function candidateBadge(c: Candidate): HTMLElement {
  const badge = el("span", "badge", `${c.method_hits.length}`);
  badge.title = c.method_hits.join(", ");
  return badge;
}

function renderTokens(
  item: Annotation,
  selected: number | null,
  cb: ViewCallbacks,
): HTMLElement {
  const line = el("div", "context-line");
  line.dir = "rtl";
  line.lang = "ar";
  const candidateIdx = new Set(item.candidates.map((c) => c.token_index));
  item.tokens.forEach((tok, i) => {
    const span = el("span", "token", tok);
    if (i === item.chosen_index) span.classList.add("chosen");
    if (i === selected) span.classList.add("pending");
    if (candidateIdx.has(i)) span.classList.add("candidate");
    span.addEventListener("click", () => cb.onTokenClick(i));
    line.appendChild(span);
  });
  return line;
}

function renderCandidates(item: Annotation): HTMLElement {
  const list = el("ul", "candidates");
  for (const c of item.candidates) {
    const row = el("li");
    row.appendChild(candidateBadge(c));
    const label = el("span", "cand-surface", c.surface);
    label.dir = "rtl";
    row.appendChild(label);
    const detail: string[] = [`@${c.token_index}`, ...c.method_hits];
    if (c.cosine_score !== null) detail.push(`cos ${c.cosine_score.toFixed(3)}`);
    if (c.edit_distance !== null) detail.push(`lev ${c.edit_distance}`);
    row.appendChild(el("span", "cand-detail", detail.join(" · ")));
    list.appendChild(row);
  }
  return list;
}

function renderItem(state: SessionState, cb: ViewCallbacks): HTMLElement {
  const item = state.items[state.index];
  const card = el("section", "item-card");
  if (!item) {
    card.appendChild(el("p", "empty", "Nothing to review in this view."));
    return card;
  }

  const head = el("header", "item-head");
  head.appendChild(el("span", `status chip-${item.status}`, item.status));
  const lemma = el("span", "lemma", item.lemma_key);
  lemma.dir = "rtl";
  head.appendChild(lemma);
  head.appendChild(el("span", "pos",
    `${state.index + 1} / ${state.items.length}`));
  if (item.multi_occurrence) {
    head.appendChild(el("span", "warn",
      "repeated word: check which occurrence is the target"));
  }
  card.appendChild(head);

  card.appendChild(renderTokens(item, state.selectedToken, cb));
  card.appendChild(renderCandidates(item));

  const actions = el("div", "actions");
  const confirmBtn = el("button", "confirm", "Confirm (c)");
  confirmBtn.disabled = item.chosen_index === null;
  confirmBtn.addEventListener("click", cb.onConfirm);
  actions.appendChild(confirmBtn);
  const saveBtn = el("button", "save", "Save correction (enter)");
  saveBtn.disabled = state.selectedToken === null;
  saveBtn.addEventListener("click", cb.onSave);
  actions.appendChild(saveBtn);
  const prevBtn = el("button", "", "Prev (k)");
  prevBtn.addEventListener("click", cb.onPrev);
  actions.appendChild(prevBtn);
  const nextBtn = el("button", "", "Next (j)");
  nextBtn.addEventListener("click", cb.onNext);
  actions.appendChild(nextBtn);
  card.appendChild(actions);
  return card;
}

export function render(
  root: HTMLElement,
  state: SessionState,
  cb: ViewCallbacks,
): void {
  root.textContent = "";

  if (state.notice) {
    const banner = el("div", "banner", state.notice);
    const retry = el("button", "", "Reload");
    retry.addEventListener("click", cb.onRetry);
    banner.appendChild(retry);
    const close = el("button", "", "Dismiss");
    close.addEventListener("click", cb.onDismiss);
    banner.appendChild(close);
    root.appendChild(banner);
  }

  const bar = el("div", "topbar");
  const select = el("select");
  for (const value of ["", "PENDING", "AUTO", "VERIFIED", "CORRECTED"]) {
    const opt = el("option", "", value || "all statuses");
    opt.value = value;
    if (value === (state.filter ?? "")) opt.selected = true;
    select.appendChild(opt);
  }
  select.addEventListener("change", () => cb.onFilter(select.value));
  bar.appendChild(select);
  if (state.progress) {
    const p = state.progress;
    const done = p.VERIFIED + p.CORRECTED;
    const total = done + p.PENDING + p.AUTO;
    bar.appendChild(el("span", "progress",
      `${done} / ${total} reviewed ` +
      `(auto ${p.AUTO}, pending ${p.PENDING})`));
  }
  root.appendChild(bar);

  if (state.loading) {
    root.appendChild(el("p", "empty", "Loading…"));
    return;
  }
  root.appendChild(renderItem(state, cb));
}

export function bindKeyboard(cb: ViewCallbacks): void {
  document.addEventListener("keydown", (ev) => {
    if (ev.target instanceof HTMLInputElement) return;
    if (ev.key === "c") cb.onConfirm();
    else if (ev.key === "j" || ev.key === "n") cb.onNext();
    else if (ev.key === "k" || ev.key === "p") cb.onPrev();
    else if (ev.key === "Enter") cb.onSave();
  });
}
